# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled cell sweep with int64 values and a 128-bit accumulator.

The caller guarantees that refined values fit in 62 bits and that the
accumulated sum fits in 126 bits.
"""

cdef extern from *:
    ctypedef long long int128 "__int128"


cdef void _walk(long long a0, long long a1, long long a2,
                long long b0, long long b1, long long b2,
                int depth, int128* acc) noexcept nogil:
    cdef long long p01, p02, p12, q01, q02, q12
    if depth == 0:
        acc[0] += (<int128>(a0 - a1)) * (b0 - b1) \
            + (<int128>(a1 - a2)) * (b1 - b2) \
            + (<int128>(a0 - a2)) * (b0 - b2)
        return
    p01 = 2 * a0 + 2 * a1 + a2
    p02 = 2 * a0 + a1 + 2 * a2
    p12 = a0 + 2 * a1 + 2 * a2
    q01 = 2 * b0 + 2 * b1 + b2
    q02 = 2 * b0 + b1 + 2 * b2
    q12 = b0 + 2 * b1 + 2 * b2
    _walk(5 * a0, p01, p02, 5 * b0, q01, q02, depth - 1, acc)
    _walk(p01, 5 * a1, p12, q01, 5 * b1, q12, depth - 1, acc)
    _walk(p02, p12, 5 * a2, q02, q12, 5 * b2, depth - 1, acc)


def edge_pair_sum(const long long[:] a, const long long[:] b, int depth):
    cdef int128 acc = 0
    cdef Py_ssize_t t, n = a.shape[0]
    with nogil:
        for t in range(0, n, 3):
            _walk(a[t], a[t + 1], a[t + 2], b[t], b[t + 1], b[t + 2], depth, &acc)
    cdef bint negative = acc < 0
    if negative:
        acc = -acc
    cdef unsigned long long lo = <unsigned long long>(acc & <int128>0xFFFFFFFFFFFFFFFF)
    cdef unsigned long long hi = <unsigned long long>(acc >> 64)
    result = (int(hi) << 64) | int(lo)
    return -result if negative else result

