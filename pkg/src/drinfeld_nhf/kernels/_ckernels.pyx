# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truncated bivariate multiplication over F_p."""
import numpy as np
from libc.stdint cimport int64_t


def mul2d(a, b, long long p, Py_ssize_t rows):
    cdef const int64_t[:, :] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef const int64_t[:, :] bv = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t ra = av.shape[0], ca = av.shape[1]
    cdef Py_ssize_t rb = bv.shape[0], cb = bv.shape[1]
    if rows < 0:
        rows = 0
    cdef Py_ssize_t cols = ca + cb - 1
    if cols < 1:
        cols = 1
    out = np.zeros((rows, cols), dtype=np.int64)
    if rows == 0 or ra == 0 or rb == 0 or ca == 0 or cb == 0:
        return out
    cdef int64_t[:, :] ov = out
    cdef Py_ssize_t i, j, k, l, kmax
    cdef int64_t x
    cdef Py_ssize_t imax = ra if ra < rows else rows
    for i in range(imax):
        kmax = rows - i
        if kmax > rb:
            kmax = rb
        for j in range(ca):
            x = av[i, j]
            if x == 0:
                continue
            for k in range(kmax):
                for l in range(cb):
                    ov[i + k, j + l] += x * bv[k, l]
    for i in range(rows):
        for j in range(cols):
            ov[i, j] %= p
    return out


def polydivmod(a, b, long long p):
    """(quotient, remainder) of dense polynomials over F_p; b has a nonzero leading coefficient."""
    cdef int64_t[:] r = np.array(a, dtype=np.int64) % p
    cdef const int64_t[:] bv = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t la = r.shape[0], lb = bv.shape[0]
    if la < lb:
        return np.zeros(0, dtype=np.int64), np.asarray(r)
    qt = np.zeros(la - lb + 1, dtype=np.int64)
    cdef int64_t[:] qv = qt
    cdef long long il = pow(int(bv[lb - 1]) % p, p - 2, p)
    cdef Py_ssize_t i, j
    cdef long long c
    for i in range(la - lb, -1, -1):
        c = (r[i + lb - 1] * il) % p
        if c:
            qv[i] = c
            for j in range(lb):
                r[i + j] = (r[i + j] - c * bv[j]) % p
                if r[i + j] < 0:
                    r[i + j] += p
    return qt, np.asarray(r)
