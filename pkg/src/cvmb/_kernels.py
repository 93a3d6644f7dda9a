"""Select the accumulation backend at import time.

The compiled Cython kernel is preferred when present; otherwise the NumPy
implementation is used.  Set ``CVMB_BACKEND=numpy`` or
``CVMB_BACKEND=compiled`` to force a choice (the latter raises if the
extension is not built).
"""

from __future__ import annotations

import os

_forced = os.environ.get("CVMB_BACKEND", "").strip().lower()

if _forced == "numpy":
    from cvmb._accumulators_py import accumulate_affine_moments

    BACKEND = "numpy"
elif _forced == "compiled":
    from cvmb._accumulators import accumulate_affine_moments  # type: ignore[no-redef]

    BACKEND = "compiled"
elif _forced:
    raise ValueError(f"unknown CVMB_BACKEND value {_forced!r}")
else:
    try:
        from cvmb._accumulators import accumulate_affine_moments  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from cvmb._accumulators_py import accumulate_affine_moments  # type: ignore[no-redef]

        BACKEND = "numpy"

__all__ = ["accumulate_affine_moments", "BACKEND"]
