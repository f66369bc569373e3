"""Local invariants: multiplicity, singular locus, cones and tangent cones."""

from __future__ import annotations

import random
from typing import Sequence

from ..algebra.polymatrix import minors
from ..algebra.ring import Poly, PolyRing
from ..ideals.ideal import Ideal
from .linear import LinearSubspace, coordinate_change_to_first, point_ideal
from .variety import Variety


class LocalError(ValueError):
    pass


def _random_hyperplane_through(ring: PolyRing, pts: Sequence[Sequence], rng) -> Poly:
    """A random linear form vanishing at the given points."""
    fld = ring.field
    sub = LinearSubspace.from_points(ring, pts)
    while True:
        f = ring.zero()
        for g in sub.forms:
            f = f + g.scale(fld.random(rng))
        if f:
            return f


def local_length(I: Ideal, pt: Sequence, rng=None) -> int:
    """Length at ``pt`` of a zero-dimensional scheme: ``len(I) - len(I : m_pt^inf)``."""
    m = point_ideal(I.ring, pt)
    total = I.zero_dim_length()
    away = I.saturate(m, rng)
    rest = 0 if away.is_unit() else away.zero_dim_length()
    return total - rest


def multiplicity_at_point(curve: Variety | Ideal, pt: Sequence, rng: random.Random | None = None,
                          planes: int = 3) -> int:
    """Multiplicity of a curve at a point, via intersection with random planes through it."""
    I = curve.ideal if isinstance(curve, Variety) else curve
    rng = rng or random.Random(11)
    h = I.hilbert()
    if h.dim != 1:
        raise LocalError(f"expected a curve, got dimension {h.dim}")
    if any(g.evaluate(pt) for g in I.gens):
        raise LocalError("point is not on the curve")
    best = None
    for _ in range(planes):
        H = _random_hyperplane_through(I.ring, [pt], rng)
        J = (I + Ideal([H], I.ring)).saturate_irrelevant(rng)
        if J.hilbert().dim != 0:
            continue
        mult = local_length(J, pt, rng)
        best = mult if best is None else min(best, mult)
    if best is None:
        raise LocalError("every plane tried contains a component of the curve")
    return best


def singular_locus(v: Variety | Ideal, gens: Sequence[Poly] | None = None, rng=None) -> Ideal:
    """``I + (c x c Jacobian minors)``, saturated; the unit ideal iff smooth (for equidimensional input)."""
    I = v.ideal if isinstance(v, Variety) else v
    n = I.ring.nvars
    dim = I.hilbert().dim
    c = (n - 1) - dim
    if c <= 0:
        return Ideal([I.ring.one()], I.ring)
    gens = list(gens) if gens is not None else I.minimal_generators()
    J = [[g.diff(j) for j in range(n)] for g in gens]
    mins = [f for f in minors(J, c, I.ring) if f]
    return (I + Ideal(mins, I.ring)).saturate_irrelevant(rng)


def is_smooth(v: Variety | Ideal, gens=None, rng=None) -> bool:
    S = singular_locus(v, gens, rng)
    return S.is_unit() or S.hilbert().dim < 0


def cone_from_point(curve: Variety | Ideal, vertex: Sequence) -> Variety:
    """Cone over ``curve`` with the given vertex (projection from the vertex, pulled back)."""
    I = curve.ideal if isinstance(curve, Variety) else curve
    ring = I.ring
    xs, zs = coordinate_change_to_first(ring, vertex)
    moved = Ideal([g.substitute(xs) for g in I.gens], ring)
    E = moved.eliminate(1, drop=False)
    back = Ideal([g.substitute(zs) for g in E.groebner()], ring)
    return Variety(back, "cone")


def contains_neighborhood(ambient: Ideal, sub: Variety | Ideal, k: int) -> bool:
    """Whether the scheme of ``ambient`` contains the ``k``-th infinitesimal neighbourhood of ``sub``."""
    if k < 0:
        raise ValueError("order must be non-negative")
    J = sub.ideal if isinstance(sub, Variety) else sub
    P = J.power(k + 1)
    return ambient.issubset(P)


def tangent_cone_at_point(f: Poly, pt: Sequence) -> Poly:
    """Lowest-order part of ``f`` at ``pt``, as a cone form with vertex ``pt``."""
    if f.evaluate(pt):
        raise LocalError("point is not on the hypersurface")
    ring = f.ring
    xs, zs = coordinate_change_to_first(ring, pt)
    g = f.substitute(xs)
    # dehomogenize at z_0 = 1 and keep the lowest-degree part in z_1..z_n
    lowest = None
    parts: dict = {}
    for e, c in g.to_dict().items():
        d = sum(e[1:])
        parts.setdefault(d, {})[(0,) + e[1:]] = c
        lowest = d if lowest is None else min(lowest, d)
    cone = ring.from_dict(parts[lowest])
    return cone.substitute(zs)


def order_at_point(f: Poly, pt: Sequence) -> int:
    """Multiplicity of the hypersurface ``f = 0`` at ``pt``."""
    ring = f.ring
    xs, _ = coordinate_change_to_first(ring, pt)
    g = f.substitute(xs)
    return min(sum(e[1:]) for e in g.to_dict())


def in_power_of_point(f: Poly, pt: Sequence, k: int) -> bool:
    """``f ∈ m_pt^k``."""
    return order_at_point(f, pt) >= k


def tangent_cone_ideal(I: Ideal, pt: Sequence) -> Ideal:
    """Tangent cone at ``pt`` of the scheme of ``I``, as a cone with vertex ``pt``.

    After moving ``pt`` to ``e_0``, the cone is generated by the parts of
    largest ``z_0``-degree of a basis for an order that compares that degree
    first.
    """
    from ..algebra.orders import elim

    if any(g.evaluate(pt) for g in I.gens):
        raise LocalError("point is not on the scheme")
    ring = I.ring
    xs, zs = coordinate_change_to_first(ring, pt)
    moved = Ideal([g.substitute(xs) for g in I.gens], ring)
    out = []
    for g in moved.groebner(elim(1)):
        d = g.to_dict()
        top = max(e[0] for e in d)
        part = {(0,) + e[1:]: c for e, c in d.items() if e[0] == top}
        out.append(ring.from_dict(part).substitute(zs))
    return Ideal(out, ring)


def is_reduced_points(I: Ideal, rng=None) -> bool:
    """A zero-dimensional projective scheme is reduced (Jacobian criterion)."""
    if I.hilbert().dim != 0:
        raise LocalError("expected a zero-dimensional scheme")
    S = singular_locus(I, None, rng)
    return S.is_unit() or S.hilbert().dim < 0
