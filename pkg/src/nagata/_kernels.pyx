# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: fat-point condition matrices and their rank modulo a prime.

Primes must be below 2**63 so that ``a + (p - b)`` fits in 64 bits; products
go through a 128-bit intermediate.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t nagata_mulmod(uint64_t a, uint64_t b, uint64_t p) {
        return (uint64_t)(((unsigned __int128)a * b) % p);
    }
    """
    uint64_t mulmod "nagata_mulmod"(uint64_t a, uint64_t b, uint64_t p) nogil


cdef uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) nogil:
    cdef uint64_t r = 1
    a %= p
    while e:
        if e & 1:
            r = mulmod(r, a, p)
        a = mulmod(a, a, p)
        e >>= 1
    return r


cdef Py_ssize_t _rank(uint64_t* M, Py_ssize_t rows, Py_ssize_t cols, uint64_t p) nogil:
    cdef Py_ssize_t rank = 0, col, r, i, j, piv
    cdef uint64_t inv, f, t
    cdef uint64_t* prow
    cdef uint64_t* irow
    for col in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if M[r * cols + col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(col, cols):
                t = M[piv * cols + j]
                M[piv * cols + j] = M[rank * cols + j]
                M[rank * cols + j] = t
        prow = M + rank * cols
        inv = powmod(prow[col], p - 2, p)
        for j in range(col, cols):
            prow[j] = mulmod(prow[j], inv, p)
        for i in range(rank + 1, rows):
            irow = M + i * cols
            f = irow[col]
            if f == 0:
                continue
            for j in range(col, cols):
                if prow[j]:
                    irow[j] = (irow[j] + (p - mulmod(f, prow[j], p))) % p
        rank += 1
    return rank


def rank_mod(rows, uint64_t p):
    """Rank of an integer matrix (list of equal-length rows) over ``GF(p)``."""
    rows = [list(row) for row in rows]
    cdef Py_ssize_t nr = len(rows)
    if nr == 0:
        return 0
    cdef Py_ssize_t nc = len(rows[0])
    if nc == 0:
        return 0
    if any(len(row) != nc for row in rows):
        raise ValueError("ragged matrix")
    cdef uint64_t* M = <uint64_t*> calloc(nr * nc, sizeof(uint64_t))
    if M == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    try:
        for i in range(nr):
            row = rows[i]
            for j in range(nc):
                M[i * nc + j] = <uint64_t> (row[j] % p)
        with nogil:
            r = _rank(M, nr, nc, p)
    finally:
        free(M)
    return r


def condition_rank(int d, mults, xs, ys, uint64_t p):
    """Rank of the conditions "multiplicity >= m_i at (x_i, y_i)" on degree-``d`` plane curves.

    Rows are Hasse derivatives: the coefficient of ``(x-a)^s (y-b)^t`` with
    ``s + t < m`` in ``x^i y^j`` is ``C(i,s) C(j,t) a^(i-s) b^(j-t)``.
    Columns are the monomials ``x^i y^j`` with ``i + j <= d``.
    """
    mults = list(mults)
    xs = list(xs)
    ys = list(ys)
    if not len(mults) == len(xs) == len(ys):
        raise ValueError("mults, xs and ys must have equal length")
    cdef Py_ssize_t ncols = (d + 1) * (d + 2) // 2
    cdef Py_ssize_t nrows = 0
    cdef int m
    for m in mults:
        if m > 0:
            nrows += m * (m + 1) // 2
    if nrows == 0 or d < 0:
        return 0
    cdef uint64_t* M = <uint64_t*> calloc(nrows * ncols, sizeof(uint64_t))
    cdef uint64_t* binom = <uint64_t*> calloc((d + 1) * (d + 1), sizeof(uint64_t))
    cdef uint64_t* apow = <uint64_t*> calloc(d + 1, sizeof(uint64_t))
    cdef uint64_t* bpow = <uint64_t*> calloc(d + 1, sizeof(uint64_t))
    if M == NULL or binom == NULL or apow == NULL or bpow == NULL:
        free(M); free(binom); free(apow); free(bpow)
        raise MemoryError()
    cdef Py_ssize_t i, j, s, t, row = 0, col, k
    cdef uint64_t a, b, v
    try:
        for i in range(d + 1):
            binom[i * (d + 1)] = 1
            for s in range(1, i + 1):
                binom[i * (d + 1) + s] = (binom[(i - 1) * (d + 1) + s - 1] + (binom[(i - 1) * (d + 1) + s] if s <= i - 1 else 0)) % p
        for k in range(len(mults)):
            m = mults[k]
            if m <= 0:
                continue
            a = <uint64_t> (xs[k] % p)
            b = <uint64_t> (ys[k] % p)
            apow[0] = 1
            bpow[0] = 1
            for i in range(1, d + 1):
                apow[i] = mulmod(apow[i - 1], a, p)
                bpow[i] = mulmod(bpow[i - 1], b, p)
            for s in range(m):
                for t in range(m - s):
                    col = 0
                    for i in range(d + 1):
                        for j in range(d + 1 - i):
                            if i >= s and j >= t:
                                v = mulmod(binom[i * (d + 1) + s], binom[j * (d + 1) + t], p)
                                v = mulmod(v, apow[i - s], p)
                                M[row * ncols + col] = mulmod(v, bpow[j - t], p)
                            col += 1
                    row += 1
        with nogil:
            r = _rank(M, nrows, ncols, p)
    finally:
        free(M); free(binom); free(apow); free(bpow)
    return r
