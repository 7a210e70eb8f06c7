# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: pairwise distances, Gaussian Gram blocks, histogram counts."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, sqrt, floor

cnp.import_array()


def sq_dists(a, b):
    cdef double[:, ::1] A = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[:, ::1] B = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t ra = A.shape[0], rb = B.shape[0], d = A.shape[1]
    out = np.empty((ra, rb), dtype=np.float64)
    cdef double[:, ::1] O = out
    cdef Py_ssize_t i, j, k
    cdef double s, t
    with nogil:
        for i in range(ra):
            for j in range(rb):
                s = 0.0
                for k in range(d):
                    t = A[i, k] - B[j, k]
                    s = s + t * t
                O[i, j] = s
    return out


def gaussian_gram(a, b, double sigma):
    cdef double[:, ::1] A = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[:, ::1] B = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t ra = A.shape[0], rb = B.shape[0], d = A.shape[1]
    out = np.empty((ra, rb), dtype=np.float64)
    cdef double[:, ::1] O = out
    cdef Py_ssize_t i, j, k
    cdef double s, t, s2 = sigma * sigma
    with nogil:
        for i in range(ra):
            for j in range(rb):
                s = 0.0
                for k in range(d):
                    t = A[i, k] - B[j, k]
                    s = s + t * t
                O[i, j] = exp(-s / s2)
    return out


def condensed_distances(rows):
    cdef double[:, ::1] R = np.ascontiguousarray(rows, dtype=np.float64)
    cdef Py_ssize_t m = R.shape[0], d = R.shape[1]
    out = np.empty(m * (m - 1) // 2, dtype=np.float64)
    cdef double[::1] O = out
    cdef Py_ssize_t i, j, k, p = 0
    cdef double s, t
    with nogil:
        for i in range(m):
            for j in range(i + 1, m):
                s = 0.0
                for k in range(d):
                    t = R[i, k] - R[j, k]
                    s = s + t * t
                O[p] = sqrt(s)
                p += 1
    return out


def bin_codes(samples, lo, hi, Py_ssize_t bins):
    cdef double[:, ::1] S = np.ascontiguousarray(samples, dtype=np.float64)
    cdef double[::1] L = np.ascontiguousarray(lo, dtype=np.float64)
    cdef double[::1] H = np.ascontiguousarray(hi, dtype=np.float64)
    cdef Py_ssize_t n = S.shape[0], d = S.shape[1]
    codes = np.zeros((n, d), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] C = codes
    cdef Py_ssize_t i, k
    cdef cnp.int64_t c
    cdef double w
    with nogil:
        for k in range(d):
            w = H[k] - L[k]
            if w <= 0:
                continue
            for i in range(n):
                c = <cnp.int64_t>floor((S[i, k] - L[k]) / w * bins)
                if c > bins - 1:
                    c = bins - 1
                C[i, k] = c
    return codes


def histogram_counts(samples, lo, hi, Py_ssize_t bins):
    codes = bin_codes(samples, lo, hi, bins)
    cdef cnp.int64_t[:, ::1] C = codes
    cdef Py_ssize_t n = C.shape[0], d = C.shape[1]
    counts = np.zeros(int(bins) ** int(d), dtype=np.int64)
    cdef cnp.int64_t[::1] N = counts
    cdef Py_ssize_t i, k
    cdef cnp.int64_t flat
    with nogil:
        for i in range(n):
            flat = 0
            for k in range(d):
                flat = flat * bins + C[i, k]
            N[flat] += 1
    return counts
