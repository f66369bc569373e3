"""Hilbert series of monomial ideals and the invariants read off from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


@lru_cache(maxsize=200_000)
def _numerator(gens: tuple) -> tuple:
    if not gens:
        return (1,)
    n = len(gens[0])
    # base case: pairwise coprime generators
    coprime = True
    used = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                if used[i]:
                    coprime = False
                    break
                used[i] = 1
        if not coprime:
            break
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(_trim(out))
    # pivot on the variable shared by most non-pure generators
    counts = [0] * n
    for g in gens:
        if sum(1 for e in g if e) > 1:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
    i = max(range(n), key=lambda k: counts[k])
    exps = sorted(g[i] for g in gens if g[i] and sum(1 for e in g if e) > 1)
    e = exps[len(exps) // 2]
    pivot = tuple(e if k == i else 0 for k in range(n))
    plus = _minimalize(list(gens) + [pivot])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens])
    left = list(_numerator(tuple(plus)))
    right = [0] * e + list(_numerator(tuple(colon)))
    return tuple(_trim(_poly_add(left, right)))


def hilbert_numerator(gens: Sequence[Sequence[int]], nvars: int) -> list[int]:
    """Numerator ``N(t)`` with ``HS(S/M) = N(t) / (1-t)^nvars``."""
    gens = [tuple(g) for g in gens]
    if any(sum(g) == 0 for g in gens):
        return [0]
    return list(_numerator(tuple(_minimalize(gens))))


@dataclass
class HilbertData:
    """Hilbert series data of ``S/I`` for a homogeneous ideal ``I`` in ``nvars`` variables."""

    nvars: int
    numerator: list[int]
    reduced_numerator: list[int] = field(default_factory=list)
    krull_dim: int = 0

    def __post_init__(self):
        num = list(self.numerator)
        a = 0
        if any(num):
            while sum(num) == 0:
                num = _divide_one_minus_t(num)
                a += 1
            self.krull_dim = self.nvars - a
        else:
            self.krull_dim = -1
        self.reduced_numerator = num

    @property
    def dim(self) -> int:
        """Projective dimension (``-1`` for the empty scheme)."""
        if self.krull_dim < 0:
            return -1
        return self.krull_dim - 1

    @property
    def degree(self) -> int:
        if self.krull_dim <= 0:
            return 0
        return sum(self.reduced_numerator)

    def hilbert_polynomial(self) -> list[Fraction]:
        """Coefficients ``[c0, c1, ...]`` of the Hilbert polynomial in ``t``."""
        D = self.krull_dim
        if D <= 0:
            return [Fraction(0)]
        total = [Fraction(0)] * D
        for i, q in enumerate(self.reduced_numerator):
            if q:
                # binom(t - i + D - 1, D - 1) as a polynomial in t
                poly = [Fraction(1)]
                for j in range(1, D):
                    poly = _fpoly_mul(poly, [Fraction(j - i), Fraction(1)])
                fact = 1
                for j in range(1, D):
                    fact *= j
                for k, c in enumerate(poly):
                    total[k] += q * c / fact
        while len(total) > 1 and total[-1] == 0:
            total.pop()
        return total

    def hilbert_polynomial_at(self, t: int) -> Fraction:
        return sum(c * t ** k for k, c in enumerate(self.hilbert_polynomial()))

    def hilbert_function(self, d: int) -> int:
        n = self.nvars
        return sum(c * comb(d - i + n - 1, n - 1) for i, c in enumerate(self.numerator) if d - i >= 0)

    @property
    def arithmetic_genus(self) -> int | None:
        """``1 - HP(0)`` for curves; ``None`` otherwise."""
        if self.dim != 1:
            return None
        hp = self.hilbert_polynomial()
        return int(1 - hp[0])

    @property
    def length(self) -> int | None:
        if self.dim != 0:
            return None
        return self.degree

    def summary(self) -> dict:
        hp = self.hilbert_polynomial()
        return {
            "dim": self.dim,
            "degree": self.degree,
            "hilbert_polynomial": [str(c) for c in hp],
            "arithmetic_genus": self.arithmetic_genus,
            "numerator": list(self.numerator),
        }


def _divide_one_minus_t(num: list[int]) -> list[int]:
    # num(t) = (1 - t) q(t); q_k = sum_{j<=k} num_j
    q = []
    acc = 0
    for c in num[:-1]:
        acc += c
        q.append(acc)
    return q or [0]


def _fpoly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def format_hilbert_polynomial(coeffs: Sequence[Fraction], var: str = "t") -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0 and len(coeffs) > 1:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = str(c)
        if mono:
            term = mono if c == 1 else (f"-{mono}" if c == -1 else f"{cs}*{mono}")
        else:
            term = cs
        parts.append(term)
    s = " + ".join(parts)
    return s.replace("+ -", "- ")
