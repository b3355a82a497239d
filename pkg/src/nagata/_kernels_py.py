"""Pure-Python versions of the compiled kernels (same signatures, same results)."""

from __future__ import annotations

from math import comb


def rank_mod(rows, p: int) -> int:
    """Rank of an integer matrix (list of equal-length rows) over ``GF(p)``."""
    mat = [[x % p for x in row] for row in rows]
    if not mat or not mat[0]:
        return 0
    if any(len(row) != len(mat[0]) for row in mat):
        raise ValueError("ragged matrix")
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = pow(prow[col], p - 2, p)
        tail = [x * inv % p for x in prow[col:]]
        prow[col:] = tail
        for i in range(rank + 1, nrows):
            irow = mat[i]
            f = irow[col]
            if f:
                irow[col:] = [(x - f * y) % p for x, y in zip(irow[col:], tail)]
        rank += 1
    return rank


def condition_rows(d: int, mults, xs, ys, p: int | None = None) -> list[list[int]]:
    """Hasse-derivative conditions for multiplicity ``m_k`` at ``(x_k, y_k)``."""
    if not len(mults) == len(xs) == len(ys):
        raise ValueError("mults, xs and ys must have equal length")
    monomials = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    rows = []
    for m, a, b in zip(mults, xs, ys):
        if m <= 0:
            continue
        for s in range(m):
            for t in range(m - s):
                row = []
                for i, j in monomials:
                    if i >= s and j >= t:
                        v = comb(i, s) * comb(j, t)
                        v = v * (pow(a, i - s, p) if p else a ** (i - s))
                        v = v * (pow(b, j - t, p) if p else b ** (j - t))
                        row.append(v % p if p else v)
                    else:
                        row.append(0)
                rows.append(row)
    return rows


def condition_rank(d: int, mults, xs, ys, p: int) -> int:
    if d < 0:
        return 0
    return rank_mod(condition_rows(d, mults, xs, ys, p), p)
