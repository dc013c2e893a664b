"""Exact Gaussian elimination over GF(q).

Matrices are int arrays of field-element encodings.  Each pivot step clears
its column in every other row at once through the field's multiplication
table; for p = 2 the row update is a plain XOR.
"""

from __future__ import annotations

import numpy as np

from .gf import GF


def rref(F: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.mul_table[F.inv_table[lead], A[r]]
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            upd = F.mul_table[col[rows, None], A[r, None, :]]
            A[rows] = F.vsub(A[rows], upd)
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: GF, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: GF, M) -> np.ndarray:
    """A basis of {x : M x = 0}, as the rows of a matrix in reduced echelon form.

    The returned basis depends only on the kernel, not on the row order of M.
    """
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(F, M)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(R[row, f]))
    if len(free) > 1:
        basis = rref(F, basis)[0]
    return basis


def matvec(F: GF, M, x) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    x = np.asarray(x, dtype=np.int64)
    return F.vsum(F.mul_table[M, x[None, :]], axis=1)


def in_row_space(F: GF, basis, v) -> bool:
    basis = np.asarray(basis, dtype=np.int64)
    if basis.size == 0:
        return not np.any(v)
    return rank(F, np.vstack([basis, v])) == rank(F, basis)
