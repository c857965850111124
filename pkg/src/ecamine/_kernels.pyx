# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table-building kernel.

Bit-identical to the numpy fallback in ``_kernels_py``: same window
indexing, same splitmix64 chain for the per-cell uniform variates.
"""

import numpy as np

from libc.stdint cimport int64_t, uint64_t

cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = z + <uint64_t>0x9E3779B97F4A7C15ULL
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EBULL
    return z ^ (z >> 31)


def cardinal_table(int l, rules, double noise_p=0.0, seed=0, bint noisy=False):
    """Cardinals of every rule output over all 2^l patterns.

    Returns an int64 array of shape (2^l, len(rules)); row i holds the
    outputs for the pattern whose cardinal is i, in the order of ``rules``.
    """
    cdef int64_t n = <int64_t>1 << l
    cdef int m = l - 2
    cdef int64_t[::1] rl = np.ascontiguousarray(rules, dtype=np.int64)
    cdef int n_rules = rl.shape[0]
    out = np.empty((n, n_rules), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef uint64_t h_seed = mix64(<uint64_t>(<object>seed & 0xFFFFFFFFFFFFFFFF))
    cdef uint64_t h_pattern, h_rule, h
    cdef int64_t i, r, acc
    cdef int k, j, w, b
    with nogil:
        for i in range(n):
            h_pattern = mix64(h_seed ^ <uint64_t>i)
            for k in range(n_rules):
                r = rl[k]
                h_rule = mix64(h_pattern ^ <uint64_t>r)
                acc = 0
                for j in range(m):
                    w = <int>((i >> (l - 3 - j)) & 7)
                    b = <int>((r >> w) & 1)
                    if noisy:
                        h = mix64(h_rule ^ <uint64_t>j)
                        if <double>(h >> 11) * INV_2_53 < noise_p:
                            b ^= 1
                    acc = (acc << 1) | b
                o[i, k] = acc
    return out
