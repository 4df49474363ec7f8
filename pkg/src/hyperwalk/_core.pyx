# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: CSR matvec and categorical walk sampling.

Walk sampling uses splitmix64, so a run is fully determined by its seed;
streams differ from the pure-NumPy backend's PCG64.
"""

from libc.stdint cimport int32_t, int64_t, uint64_t

import numpy as np


cdef inline uint64_t _next_u64(uint64_t* state) nogil:
    state[0] += <uint64_t>0x9E3779B97F4A7C15
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline double _next_double(uint64_t* state) nogil:
    # 53 random bits -> uniform double in [0, 1)
    return <double>(_next_u64(state) >> 11) * (1.0 / 9007199254740992.0)


cdef inline int64_t _sample(const int64_t[::1] indptr, const int32_t[::1] indices,
                            const double[::1] cdf, int64_t node, double u) nogil:
    cdef int64_t a = indptr[node]
    cdef int64_t b = indptr[node + 1]
    cdef int64_t lo, hi, mid
    cdef double x
    if a == b:
        return -1
    x = u * cdf[b - 1]
    lo = a
    hi = b - 1
    while lo < hi:
        mid = (lo + hi) >> 1
        if cdf[mid] > x:
            hi = mid
        else:
            lo = mid + 1
    return indices[lo]


def csr_matvec(const int64_t[::1] indptr, const int32_t[::1] indices,
               const double[::1] data, const double[::1] x, double[::1] out):
    """CSR matrix-vector product into ``out``."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t i
    cdef int64_t p
    cdef double acc
    with nogil:
        for i in range(n):
            acc = 0.0
            for p in range(indptr[i], indptr[i + 1]):
                acc += data[p] * x[indices[p]]
            out[i] = acc
    return None


def walk_hits(const int64_t[::1] indptr, const int32_t[::1] indices, const double[::1] cdf,
              int64_t start, int64_t target, int64_t runs, int64_t max_steps, seed):
    """Per-run step counts until ``target`` is first reached; -1 if censored."""
    steps_arr = np.full(runs, -1, dtype=np.int64)
    cdef int64_t[::1] out = steps_arr
    cdef uint64_t state = <uint64_t>int(seed)
    cdef int64_t r, step, cur, nxt
    with nogil:
        for r in range(runs):
            cur = start
            for step in range(1, max_steps + 1):
                nxt = _sample(indptr, indices, cdf, cur, _next_double(&state))
                if nxt < 0:
                    break
                if nxt == target:
                    out[r] = step
                    break
                cur = nxt
    return steps_arr


def walk_paths(const int64_t[::1] indptr, const int32_t[::1] indices, const double[::1] cdf,
               starts, int64_t steps, seed):
    """One sampled path of ``steps`` transitions per start node."""
    starts_arr = np.ascontiguousarray(starts, dtype=np.int64)
    cdef const int64_t[::1] starts_view = starts_arr
    cdef Py_ssize_t n = starts_view.shape[0]
    paths_arr = np.empty((n, steps + 1), dtype=np.int64)
    cdef int64_t[:, ::1] paths = paths_arr
    cdef uint64_t state = <uint64_t>int(seed)
    cdef Py_ssize_t i
    cdef int64_t s, cur, nxt
    with nogil:
        for i in range(n):
            cur = starts_view[i]
            paths[i, 0] = cur
            for s in range(1, steps + 1):
                nxt = _sample(indptr, indices, cdf, cur, _next_double(&state))
                if nxt >= 0:
                    cur = nxt
                paths[i, s] = cur
    return paths_arr
