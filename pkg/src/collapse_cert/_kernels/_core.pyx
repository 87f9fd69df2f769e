# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled lane of the row kernels. Contracts mirror ``_ref`` exactly;
each kernel makes a single fused pass per row."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, log

cnp.import_array()

DEF CLAMP_FLOOR = 1e-12


def softmax_rows(logits):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.ascontiguousarray(logits, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, k), dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double m, s, e
    for i in range(n):
        m = a[i, 0]
        for j in range(1, k):
            if a[i, j] > m:
                m = a[i, j]
        s = 0.0
        for j in range(k):
            e = exp(a[i, j] - m)
            out[i, j] = e
            s += e
        for j in range(k):
            out[i, j] /= s
    return out


def logsumexp_rows(a_in):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.ascontiguousarray(a_in, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double m, s
    for i in range(n):
        m = a[i, 0]
        for j in range(1, k):
            if a[i, j] > m:
                m = a[i, j]
        s = 0.0
        for j in range(k):
            s += exp(a[i, j] - m)
        out[i] = m + log(s)
    return out


def kl_rows(p_in, q_in):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] p = np.ascontiguousarray(p_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] q = np.ascontiguousarray(q_in, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0], k = p.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef long clamps = 0
    cdef double s, pv, qv
    for i in range(n):
        s = 0.0
        for j in range(k):
            pv = p[i, j]
            qv = q[i, j]
            if pv < CLAMP_FLOOR:
                clamps += 1
            if qv < CLAMP_FLOOR:
                clamps += 1
                qv = CLAMP_FLOOR
            s += pv * (log(pv if pv > CLAMP_FLOOR else CLAMP_FLOOR) - log(qv))
        out[i] = s
    return out, clamps


def kl_rows_logits(p_in, logits_in):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] p = np.ascontiguousarray(p_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.ascontiguousarray(logits_in, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0], k = p.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef long clamps = 0
    cdef double m, lse, s, pv
    for i in range(n):
        m = a[i, 0]
        for j in range(1, k):
            if a[i, j] > m:
                m = a[i, j]
        lse = 0.0
        for j in range(k):
            lse += exp(a[i, j] - m)
        lse = m + log(lse)
        s = 0.0
        for j in range(k):
            pv = p[i, j]
            if pv < CLAMP_FLOOR:
                clamps += 1
            s += pv * (log(pv if pv > CLAMP_FLOOR else CLAMP_FLOOR) - (a[i, j] - lse))
        out[i] = s
    return out, clamps


def softmax_residual(p_in, logits_in):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] p = np.ascontiguousarray(p_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.ascontiguousarray(logits_in, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0], k = p.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, k), dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double m, s, e
    for i in range(n):
        m = a[i, 0]
        for j in range(1, k):
            if a[i, j] > m:
                m = a[i, j]
        s = 0.0
        for j in range(k):
            e = exp(a[i, j] - m)
            out[i, j] = e
            s += e
        for j in range(k):
            out[i, j] = out[i, j] / s - p[i, j]
    return out
