# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled accumulation kernel for the measurement simulator.

Fuses the affine shot transform with Kahan-compensated accumulation of
the error moments, in a single pass over the sample block.
"""


def accumulate_affine_moments(double[:, ::1] z, double[:, ::1] a, double[::1] c):
    """Accumulate error moments for shots ``e_i = a @ z_i + c``.

    Args:
        z: (n, k) standard-normal draws, C-contiguous float64
        a: (2, k) affine transform rows
        c: (2,) affine offset

    Returns:
        tuple: (sum e1, sum e2, sum e1^2, sum e2^2, sum e1*e2,
                sum (e1^2 + e2^2)^2), each Kahan-compensated.
    """
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t k = z.shape[1]
    cdef Py_ssize_t i, j, m
    cdef double e1, e2, sq
    cdef double vals[6]
    cdef double sums[6]
    cdef double comp[6]
    cdef double y, t

    if a.shape[0] != 2 or a.shape[1] != k or c.shape[0] != 2:
        raise ValueError("transform shape must be (2, k) with offset length 2")

    for m in range(6):
        sums[m] = 0.0
        comp[m] = 0.0

    for i in range(n):
        e1 = c[0]
        e2 = c[1]
        for j in range(k):
            e1 += a[0, j] * z[i, j]
            e2 += a[1, j] * z[i, j]
        sq = e1 * e1 + e2 * e2
        vals[0] = e1
        vals[1] = e2
        vals[2] = e1 * e1
        vals[3] = e2 * e2
        vals[4] = e1 * e2
        vals[5] = sq * sq
        for m in range(6):
            y = vals[m] - comp[m]
            t = sums[m] + y
            comp[m] = (t - sums[m]) - y
            sums[m] = t

    return (sums[0], sums[1], sums[2], sums[3], sums[4], sums[5])
