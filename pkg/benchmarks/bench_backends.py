#!/usr/bin/env python3
"""Benchmark the compiled accumulation kernel against the NumPy fallback.

Usage: python benchmarks/bench_backends.py [shots] [repeats]
"""

import sys
import time

import numpy as np

from cvmb._accumulators_py import accumulate_affine_moments as numpy_kernel

try:
    from cvmb._accumulators import accumulate_affine_moments as compiled_kernel
except ImportError:
    compiled_kernel = None


def bench(kernel, z, a, c, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = kernel(z, a, c)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    shots = int(sys.argv[1]) if len(sys.argv) > 1 else 2_000_000
    repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 5

    rng = np.random.default_rng(7)
    z = rng.standard_normal((shots, 2))
    a = np.ascontiguousarray(rng.standard_normal((2, 2)))
    c = np.ascontiguousarray(rng.standard_normal(2))

    t_np, res_np = bench(numpy_kernel, z, a, c, repeats)
    print(f"numpy    : {shots / t_np / 1e6:8.1f} Mshots/s  ({t_np * 1e3:.2f} ms)")

    if compiled_kernel is None:
        print("compiled : not built (run `python setup.py build_ext --inplace`)")
        return

    t_cy, res_cy = bench(compiled_kernel, z, a, c, repeats)
    print(f"compiled : {shots / t_cy / 1e6:8.1f} Mshots/s  ({t_cy * 1e3:.2f} ms)")
    print(f"speedup  : {t_np / t_cy:.2f}x")

    worst = max(
        abs(x - y) / max(abs(x), 1.0) for x, y in zip(res_np, res_cy)
    )
    print(f"agreement: max relative difference {worst:.2e}")


if __name__ == "__main__":
    main()
