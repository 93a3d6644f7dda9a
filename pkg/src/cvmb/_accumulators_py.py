"""NumPy fallback for the accumulation kernel.

Same contract as the compiled version.  Reductions use NumPy's pairwise
summation instead of an explicit Kahan loop; the two backends agree to a
relative 1e-12 and each is deterministic on its own.
"""

from __future__ import annotations

import numpy as np


def accumulate_affine_moments(z, a, c):
    """Accumulate error moments for shots ``e_i = a @ z_i + c``.

    See the compiled kernel for the returned tuple layout.
    """
    z = np.asarray(z, dtype=float)
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    if a.shape != (2, z.shape[1]) or c.shape != (2,):
        raise ValueError("transform shape must be (2, k) with offset length 2")
    e = z @ a.T + c
    e1 = e[:, 0]
    e2 = e[:, 1]
    sq = e1 * e1 + e2 * e2
    return (
        float(e1.sum()),
        float(e2.sum()),
        float((e1 * e1).sum()),
        float((e2 * e2).sum()),
        float((e1 * e2).sum()),
        float((sq * sq).sum()),
    )
