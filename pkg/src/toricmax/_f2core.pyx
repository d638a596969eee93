# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) kernels over bit-packed rows.

Row ``i`` of a matrix with ``ncols`` columns is stored in ``w[i, :]``; column
``j`` is bit ``j & 63`` of word ``j >> 6``.
"""
import numpy as np
from libc.stdint cimport uint64_t


def rref_inplace(uint64_t[:, ::1] w, Py_ssize_t ncols):
    """Reduce ``w`` to reduced row-echelon form in place; return pivot columns."""
    cdef Py_ssize_t nrows = w.shape[0]
    cdef Py_ssize_t nwords = w.shape[1]
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, i, k, wi, piv
    cdef uint64_t bit, tmp
    pivots = []
    for col in range(ncols):
        if rank == nrows:
            break
        wi = col >> 6
        bit = (<uint64_t>1) << (col & 63)
        piv = -1
        for i in range(rank, nrows):
            if w[i, wi] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(nwords):
                tmp = w[piv, k]
                w[piv, k] = w[rank, k]
                w[rank, k] = tmp
        # the pivot row is zero left of ``col``, so words below ``wi`` are untouched
        for i in range(nrows):
            if i != rank and (w[i, wi] & bit):
                for k in range(wi, nwords):
                    w[i, k] ^= w[rank, k]
        pivots.append(col)
        rank += 1
    return pivots


def echelon_rank(uint64_t[:, ::1] w, Py_ssize_t ncols):
    """Forward elimination only; destroys ``w`` and returns its rank."""
    cdef Py_ssize_t nrows = w.shape[0]
    cdef Py_ssize_t nwords = w.shape[1]
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, i, k, wi, piv
    cdef uint64_t bit, tmp
    for col in range(ncols):
        if rank == nrows:
            break
        wi = col >> 6
        bit = (<uint64_t>1) << (col & 63)
        piv = -1
        for i in range(rank, nrows):
            if w[i, wi] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(wi, nwords):
                tmp = w[piv, k]
                w[piv, k] = w[rank, k]
                w[rank, k] = tmp
        for i in range(piv + 1, nrows):
            if w[i, wi] & bit:
                for k in range(wi, nwords):
                    w[i, k] ^= w[rank, k]
        rank += 1
    return rank


def matmul(const uint64_t[:, ::1] a, Py_ssize_t inner, const uint64_t[:, ::1] b):
    """Product over GF(2): row ``i`` of the result is the XOR of rows ``k`` of
    ``b`` for which bit ``k`` of row ``i`` of ``a`` is set."""
    cdef Py_ssize_t nrows = a.shape[0]
    cdef Py_ssize_t nwords = b.shape[1]
    cdef Py_ssize_t i, k, j
    out_arr = np.zeros((nrows, nwords), dtype=np.uint64)
    cdef uint64_t[:, ::1] out = out_arr
    for i in range(nrows):
        for k in range(inner):
            if (a[i, k >> 6] >> (k & 63)) & 1:
                for j in range(nwords):
                    out[i, j] ^= b[k, j]
    return out_arr
