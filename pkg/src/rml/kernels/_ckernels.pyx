# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p) kernels: row reduction, batched rank, rank histograms."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

ctypedef cnp.int64_t i64


cdef void _inv_table(i64 p, i64* inv) noexcept:
    cdef i64 x, y
    inv[0] = 0
    for x in range(1, p):
        for y in range(1, p):
            if (x * y) % p == 1:
                inv[x] = y
                break


cdef int _rank_inplace(i64* a, int r, int c, i64 p, i64* inv) noexcept:
    # a is row-major r x c, entries already reduced mod p
    cdef int row = 0, col, i, j, piv
    cdef i64 f, t, s
    for col in range(c):
        if row == r:
            break
        piv = -1
        for i in range(row, r):
            if a[i * c + col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(c):
                t = a[row * c + j]
                a[row * c + j] = a[piv * c + j]
                a[piv * c + j] = t
        s = inv[a[row * c + col]]
        for j in range(c):
            a[row * c + j] = (a[row * c + j] * s) % p
        for i in range(r):
            if i == row:
                continue
            f = a[i * c + col]
            if f != 0:
                for j in range(c):
                    a[i * c + j] = (a[i * c + j] + (p - f) * a[row * c + j]) % p
        row += 1
    return row


def rref_modp(M, long p):
    """Reduced row echelon form of ``M`` over GF(p); returns ``(R, pivots)``."""
    R = np.array(M, dtype=np.int64) % p
    if R.ndim != 2:
        raise ValueError("rref_modp expects a 2-d array")
    R = np.ascontiguousarray(R)
    cdef int r = R.shape[0], c = R.shape[1]
    cdef i64[:, ::1] view = R
    cdef i64* inv = <i64*> malloc(p * sizeof(i64))
    _inv_table(p, inv)
    cdef int rk = 0
    if r > 0 and c > 0:
        rk = _rank_inplace(&view[0, 0], r, c, p, inv)
    free(inv)
    pivots = []
    cdef int i, j
    for i in range(rk):
        for j in range(c):
            if view[i, j] != 0:
                pivots.append(j)
                break
    return R, pivots


def batch_rank_modp(mats, long p):
    """Rank over GF(p) of every matrix in a stack of shape (N, r, c)."""
    A = np.ascontiguousarray(np.array(mats, dtype=np.int64) % p)
    if A.ndim != 3:
        raise ValueError("batch_rank_modp expects a 3-d array")
    cdef Py_ssize_t N = A.shape[0], k
    cdef int r = A.shape[1], c = A.shape[2]
    out = np.zeros(N, dtype=np.int64)
    if N == 0 or r == 0 or c == 0:
        return out
    cdef i64[:, :, ::1] view = A
    cdef i64[::1] res = out
    cdef i64* inv = <i64*> malloc(p * sizeof(i64))
    _inv_table(p, inv)
    for k in range(N):
        res[k] = _rank_inplace(&view[k, 0, 0], r, c, p, inv)
    free(inv)
    return out


def rank_distribution_modp(basis, int r, int c, long p, chunk=None):
    """Count the codewords of each rank in the span of ``basis``.

    Walks all p**k coefficient vectors with an odometer; each step adds one
    basis row to the running codeword.
    """
    B = np.ascontiguousarray(np.array(basis, dtype=np.int64).reshape(-1, r * c) % p)
    cdef int k = B.shape[0], nc = r * c, i, j
    cdef int lo = r if r < c else c
    counts = np.zeros(lo + 1, dtype=np.int64)
    cdef i64[::1] cnt = counts
    if nc == 0:
        cnt[0] = 1
        return counts
    cdef i64[:, ::1] bv = B
    cdef i64* word = <i64*> malloc(nc * sizeof(i64))
    cdef i64* work = <i64*> malloc(nc * sizeof(i64))
    cdef i64* digit = <i64*> malloc((k + 1) * sizeof(i64))
    cdef i64* inv = <i64*> malloc(p * sizeof(i64))
    _inv_table(p, inv)
    for j in range(nc):
        word[j] = 0
    for i in range(k + 1):
        digit[i] = 0
    while True:
        for j in range(nc):
            work[j] = word[j]
        cnt[_rank_inplace(work, r, c, p, inv)] += 1
        i = 0
        while i < k:
            for j in range(nc):
                word[j] = (word[j] + bv[i, j]) % p
            digit[i] += 1
            if digit[i] < p:
                break
            digit[i] = 0
            i += 1
        if i == k:
            break
    free(word)
    free(work)
    free(digit)
    free(inv)
    return counts
