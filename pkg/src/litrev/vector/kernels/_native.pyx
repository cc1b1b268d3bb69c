# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels: L2 distance scan and BM25 posting accumulation."""

import numpy as np


def l2_sq_distances(double[:, ::1] matrix, double[::1] query):
    cdef Py_ssize_t n = matrix.shape[0]
    cdef Py_ssize_t d = matrix.shape[1]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] out_v = out
    cdef Py_ssize_t i, j
    cdef double acc, diff
    for i in range(n):
        acc = 0.0
        for j in range(d):
            diff = matrix[i, j] - query[j]
            acc += diff * diff
        out_v[i] = acc
    return out


def bm25_accumulate(double[::1] scores, long long[::1] idxs, double[::1] tfs,
                    double[::1] norms, double idf, double k1):
    cdef Py_ssize_t m = idxs.shape[0]
    cdef Py_ssize_t t
    cdef Py_ssize_t i
    cdef double tf
    for t in range(m):
        i = <Py_ssize_t> idxs[t]
        tf = tfs[t]
        scores[i] += idf * (tf * (k1 + 1.0)) / (tf + norms[i])
