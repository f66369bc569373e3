"""Random points over F_p: restriction to lines, points on hypersurfaces and varieties."""

from __future__ import annotations

from typing import Sequence

from ..algebra import univariate as uni
from ..algebra.ring import Poly


def restrict_to_line(f: Poly, P: Sequence[int], Q: Sequence[int]) -> list[int]:
    """Coefficients of ``t -> f(P + t Q)`` (prime fields only), by interpolation."""
    p = f.ring.field.p
    d = max(f.degree(), 0)
    xs = list(range(d + 1))
    ys = [f.evaluate([(a + t * b) % p for a, b in zip(P, Q)]) for t in xs]
    return uni.interpolate(xs, ys, p)


def random_point(nvars: int, field, rng) -> list:
    while True:
        pt = [field.random(rng) for _ in range(nvars)]
        if any(pt):
            return pt


def points_on_hypersurface(f: Poly, rng, count: int = 1, tries: int = 1000) -> list[list[int]]:
    """Rational points of ``{f = 0}`` found on random lines."""
    fld = f.ring.field
    p = fld.p
    n = f.ring.nvars
    out: list[list[int]] = []
    for _ in range(tries):
        P = random_point(n, fld, rng)
        Q = random_point(n, fld, rng)
        poly = restrict_to_line(f, P, Q)
        if not poly:
            continue
        for t in uni.roots(poly, p, rng):
            out.append([(a + t * b) % p for a, b in zip(P, Q)])
            if len(out) >= count:
                return out
    raise RuntimeError("no rational points found on the hypersurface")


def is_zero_on_points(f: Poly, pts) -> bool:
    return all(not f.evaluate(pt) for pt in pts)


def proportional(u: Sequence[int], v: Sequence[int], p: int) -> bool:
    """Whether two nonzero vectors over F_p are proportional."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if (u[i] * v[j] - u[j] * v[i]) % p:
                return False
    return any(x % p for x in u) and any(x % p for x in v)


def normalize_point(v: Sequence[int], p: int) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    for c in v:
        if c % p:
            inv = pow(c, -1, p)
            return tuple(x * inv % p for x in v)
    raise ValueError("zero vector is not a projective point")
