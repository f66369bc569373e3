"""Small matrices of polynomials: determinants, minors, Pfaffians, Jacobians."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .ring import Poly, PolyRing


def det(M: Sequence[Sequence[Poly]], ring: PolyRing) -> Poly:
    """Laplace expansion along rows with memoised column subsets (n <= ~8)."""
    n = len(M)
    if n == 0:
        return ring.one()
    memo: dict = {}

    def rec(row: int, cols: tuple) -> Poly:
        if row == n:
            return ring.one()
        got = memo.get(cols)
        if got is not None:
            return got
        acc = ring.zero()
        for k, c in enumerate(cols):
            a = M[row][c]
            if not a:
                continue
            sub = rec(row + 1, cols[:k] + cols[k + 1:])
            if not sub:
                continue
            term = a * sub
            acc = acc - term if k % 2 else acc + term
        memo[cols] = acc
        return acc

    return rec(0, tuple(range(n)))


def minor(M, rows: Sequence[int], cols: Sequence[int], ring: PolyRing) -> Poly:
    return det([[M[r][c] for c in cols] for r in rows], ring)


def minors(M, k: int, ring: PolyRing) -> list[Poly]:
    """All ``k x k`` minors, rows-major then columns, in lexicographic index order."""
    nr, nc = len(M), len(M[0])
    return [minor(M, rs, cs, ring) for rs in combinations(range(nr), k) for cs in combinations(range(nc), k)]


def maximal_minors_signed(M, ring: PolyRing) -> list[Poly]:
    """For an ``(m) x (m+1)`` matrix, the signed maximal minors: a kernel vector."""
    m = len(M)
    ncols = len(M[0])
    if ncols != m + 1:
        raise ValueError("need an m x (m+1) matrix")
    out = []
    for j in range(ncols):
        cols = [c for c in range(ncols) if c != j]
        d = minor(M, range(m), cols, ring)
        out.append(-d if j % 2 else d)
    return out


def pfaffian(A, ring: PolyRing) -> Poly:
    n = len(A)
    if n % 2:
        return ring.zero()
    memo: dict = {}

    def rec(idx: tuple) -> Poly:
        if not idx:
            return ring.one()
        got = memo.get(idx)
        if got is not None:
            return got
        i0 = idx[0]
        acc = ring.zero()
        for k in range(1, len(idx)):
            a = A[i0][idx[k]]
            if not a:
                continue
            rest = idx[1:k] + idx[k + 1:]
            term = a * rec(rest)
            acc = acc + term if k % 2 else acc - term
        memo[idx] = acc
        return acc

    return rec(tuple(range(n)))


def jacobian(forms: Sequence[Poly], ring: PolyRing | None = None) -> list[list[Poly]]:
    if ring is None:
        ring = forms[0].ring
    return [[f.diff(j) for j in range(ring.nvars)] for f in forms]


def mat_vec(M, v, ring: PolyRing) -> list[Poly]:
    out = []
    for row in M:
        acc = ring.zero()
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def scalar_matrix(M, ring: PolyRing) -> list[list[Poly]]:
    return [[ring.constant(x) for x in row] for row in M]


def linear_matrix(coeffs, ring: PolyRing) -> list[list[Poly]]:
    """``coeffs[i][j]`` is the coefficient list of a linear form."""
    return [[ring.linear_form(c) for c in row] for row in coeffs]


def evaluate_matrix(M, point) -> list[list]:
    return [[a.evaluate(point) for a in row] for row in M]
