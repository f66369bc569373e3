"""Exact linear algebra over Q or F_p.

Prime-field routines run on int64 numpy arrays (entries kept in [0, p),
p < 2**31 so a single product fits); rational routines run on lists of
Fractions and are meant for small matrices only.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .field import Field


def rref_modp(A: np.ndarray, p: int, *, copy: bool = True):
    """Reduced row echelon form mod ``p``; returns ``(R, pivot_columns)``."""
    R = np.array(A, dtype=np.int64, copy=copy) % p
    nrows, ncols = R.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), -1, p)
        if inv != 1:
            R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rref_rational(A):
    R = [[Fraction(x) for x in row] for row in A]
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rref(A, field: Field):
    if field.p is None:
        return rref_rational(A)
    R, piv = rref_modp(np.asarray(A, dtype=object).astype(np.int64) if not isinstance(A, np.ndarray) else A, field.p)
    return R, piv


def rank(A, field: Field) -> int:
    if len(A) == 0:
        return 0
    return len(rref(A, field)[1])


def nullspace(A, field: Field, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel ``{v : A v = 0}``."""
    if ncols is None:
        ncols = len(A[0]) if len(A) else 0
    if len(A) == 0:
        R, piv = [], []
    else:
        R, piv = rref(A, field)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(R, piv):
            v[pc] = field.neg(field(int(row[fc])) if field.p is not None else row[fc])
        basis.append(v)
    return basis


def det(A, field: Field):
    """Determinant of a square scalar matrix by elimination."""
    n = len(A)
    if n == 0:
        return field.one
    M = [[field(x) for x in row] for row in A]
    sign = 1
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        pc = M[c][c]
        result = field.mul(result, pc)
        inv = field.inv(pc)
        for i in range(c + 1, n):
            if M[i][c]:
                f = field.mul(M[i][c], inv)
                M[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(M[i], M[c])]
    return result if sign > 0 else field.neg(result)


def random_invertible(n: int, field: Field, rng) -> list[list]:
    while True:
        M = [[field.random(rng) for _ in range(n)] for _ in range(n)]
        if det(M, field):
            return M


def inverse(A, field: Field) -> list[list]:
    n = len(A)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug, field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    out = []
    for i in range(n):
        row = R[i]
        out.append([field(int(x)) if field.p is not None else x for x in row[n:]])
    return out
