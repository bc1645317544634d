# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled bitset kernels: marginal-count scans over packed uint64 rows.

These are the hot inner loops of the greedy algorithms. Semantics are
bit-for-bit identical to ccsubmod._kernels.fallback; a parity test keeps
the two in sync.
"""

from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define CCSUB_POPCNT(x) __builtin_popcountll(x)
    #else
    static inline int CCSUB_POPCNT(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; ++c; }
        return c;
    }
    #endif
    """
    int CCSUB_POPCNT(unsigned long long x) nogil


def gains_rows(const uint64_t[:, ::1] rows,
               const int64_t[::1] cand,
               const uint64_t[::1] covered,
               int64_t[::1] out):
    """out[j] = popcount(rows[cand[j]] & ~covered)."""
    cdef Py_ssize_t m = cand.shape[0]
    cdef Py_ssize_t nw = covered.shape[0]
    cdef Py_ssize_t j, w, r
    cdef int64_t acc
    with nogil:
        for j in range(m):
            r = cand[j]
            acc = 0
            for w in range(nw):
                acc += CCSUB_POPCNT(rows[r, w] & ~covered[w])
            out[j] = acc


def gains_samples(const uint64_t[:, :, ::1] reach,
                  const int64_t[::1] cand,
                  const uint64_t[:, ::1] covered,
                  int64_t[::1] out):
    """out[j] = sum over samples s of popcount(reach[s, cand[j]] & ~covered[s])."""
    cdef Py_ssize_t ns = reach.shape[0]
    cdef Py_ssize_t m = cand.shape[0]
    cdef Py_ssize_t nw = covered.shape[1]
    cdef Py_ssize_t s, j, w, r
    cdef int64_t acc
    with nogil:
        for j in range(m):
            r = cand[j]
            acc = 0
            for s in range(ns):
                for w in range(nw):
                    acc += CCSUB_POPCNT(reach[s, r, w] & ~covered[s, w])
            out[j] = acc
