"""Linear subspaces of projective space and projective coordinate changes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..algebra.linalg import inverse, nullspace, rank
from ..algebra.ring import Poly, PolyRing
from ..ideals.ideal import Ideal


@dataclass
class LinearSubspace:
    """A projective linear subspace, kept both as spanning points and as equations."""

    ring: PolyRing
    points: list[list] = field(default_factory=list)
    forms: list[Poly] = field(default_factory=list)

    @classmethod
    def from_points(cls, ring: PolyRing, points: Sequence[Sequence]) -> "LinearSubspace":
        fld = ring.field
        pts = [[fld(c) for c in p] for p in points]
        if pts and rank(pts, fld) != len(pts):
            raise ValueError("spanning points are dependent")
        eqs = nullspace(pts, fld, ring.nvars) if pts else [
            [fld.one if i == j else fld.zero for j in range(ring.nvars)] for i in range(ring.nvars)]
        return cls(ring, pts, [ring.linear_form(e) for e in eqs])

    @classmethod
    def from_forms(cls, ring: PolyRing, forms: Sequence[Poly]) -> "LinearSubspace":
        fld = ring.field
        n = ring.nvars
        rows = [linear_coefficients(f) for f in forms]
        if rows and rank(rows, fld) != len(rows):
            raise ValueError("equations are dependent")
        pts = nullspace(rows, fld, n) if rows else [
            [fld.one if i == j else fld.zero for j in range(n)] for i in range(n)]
        return cls(ring, pts, [f.to_ring(ring) for f in forms])

    @property
    def dim(self) -> int:
        return len(self.points) - 1

    @property
    def ambient_dim(self) -> int:
        return self.ring.nvars - 1

    def ideal(self) -> Ideal:
        return Ideal(self.forms, self.ring)

    def contains_point(self, pt: Sequence) -> bool:
        return all(not f.evaluate(pt) for f in self.forms)

    def random_point(self, rng) -> list:
        fld = self.ring.field
        while True:
            coeffs = [fld.random(rng) for _ in self.points]
            pt = [fld.zero] * self.ring.nvars
            for c, p in zip(coeffs, self.points):
                pt = [fld.add(a, fld.mul(c, b)) for a, b in zip(pt, p)]
            if any(pt):
                return pt

    def parametrization(self, target: PolyRing | None = None) -> list[Poly]:
        """Linear forms in ``dim+1`` parameters sending ``e_i`` to ``points[i]``."""
        k = len(self.points)
        if target is None:
            target = PolyRing(k, self.ring.field)
        return [target.linear_form([p[j] for p in self.points]) for j in range(self.ring.nvars)]

    def span(self, other: "LinearSubspace") -> "LinearSubspace":
        pts = self.points + other.points
        fld = self.ring.field
        keep: list = []
        for p in pts:
            if rank(keep + [p], fld) > len(keep):
                keep.append(p)
        return LinearSubspace.from_points(self.ring, keep)

    def __str__(self):
        return "span(" + "; ".join("(" + ":".join(self.ring.field.to_str(c) for c in p) + ")" for p in self.points) + ")"


def linear_coefficients(f: Poly) -> list:
    n = f.ring.nvars
    if f and f.homogeneity() != 1:
        raise ValueError("not a linear form")
    return [f.coefficient(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]


def point_ideal(ring: PolyRing, pt: Sequence) -> Ideal:
    return LinearSubspace.from_points(ring, [pt]).ideal()


def coordinate_change_to_first(ring: PolyRing, pt: Sequence):
    """Forms ``(xs, zs)`` with ``x = T z``, ``T e_0 = pt``.

    ``f.substitute(xs)`` expresses ``f`` in coordinates where ``pt`` is
    ``(1:0:...:0)``; ``g.substitute(zs)`` goes back.
    """
    fld = ring.field
    n = ring.nvars
    pt = [fld(c) for c in pt]
    piv = next(i for i in range(n) if pt[i])
    cols = [pt] + [[fld.one if r == j else fld.zero for r in range(n)] for j in range(n) if j != piv]
    T = [[cols[c][r] for c in range(n)] for r in range(n)]
    Tinv = inverse(T, fld)
    xs = [ring.linear_form(T[r]) for r in range(n)]
    zs = [ring.linear_form(Tinv[r]) for r in range(n)]
    return xs, zs


def random_linear_change(ring: PolyRing, rng):
    """Forms ``(xs, zs)`` of a random projective change of coordinates and its inverse."""
    from ..algebra.linalg import random_invertible

    fld = ring.field
    T = random_invertible(ring.nvars, fld, rng)
    Tinv = inverse(T, fld)
    return [ring.linear_form(r) for r in T], [ring.linear_form(r) for r in Tinv]
