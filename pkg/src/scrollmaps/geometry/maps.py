"""Rational maps between projective varieties.

A map is a tuple of forms of one degree on the source ring, optionally
restricted to a source variety.  Images are computed by elimination,
inverses from the part of the graph ideal that is linear in the source
coordinates.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..algebra import univariate as uni
from ..algebra.linalg import nullspace, rank
from ..algebra.orders import GREVLEX, elim
from ..algebra.polymatrix import maximal_minors_signed
from ..algebra.ring import Poly, PolyRing
from ..ideals.groebner import normal_form
from ..ideals.ideal import Ideal, divide_exact, poly_gcd_many, shift_poly
from .sampling import random_point, restrict_to_line
from .variety import Variety

log = logging.getLogger(__name__)


class MapError(ValueError):
    pass


@dataclass
class RationalMap:
    forms: list[Poly]
    source: Variety | None = None
    name: str = ""

    def __post_init__(self):
        if not self.forms:
            raise MapError("a map needs at least one form")
        ring = self.forms[0].ring
        degs = set()
        for f in self.forms:
            if not f.ring.same_space(ring):
                raise MapError("forms live in different rings")
            if f:
                d = f.homogeneity()
                if d is None:
                    raise MapError("map forms must be homogeneous")
                degs.add(d)
        if len(degs) > 1:
            raise MapError(f"map forms have different degrees {sorted(degs)}")
        self.forms = [f.to_ring(ring) for f in self.forms]

    @property
    def ring(self) -> PolyRing:
        return self.forms[0].ring

    @property
    def degree(self) -> int:
        return max(f.degree() for f in self.forms)

    @property
    def source_nvars(self) -> int:
        return self.ring.nvars

    @property
    def target_nvars(self) -> int:
        return len(self.forms)

    def target_ring(self, names=None) -> PolyRing:
        return PolyRing(len(self.forms), self.ring.field, GREVLEX, names)

    def evaluate(self, pt: Sequence) -> list:
        return [f.evaluate(pt) for f in self.forms]

    def is_defined_at(self, pt: Sequence) -> bool:
        return any(self.evaluate(pt))

    def source_ideal(self) -> Ideal:
        if self.source is None:
            return Ideal.zero(self.ring)
        return self.source.ideal

    def reduced(self) -> "RationalMap":
        g = tuple_gcd(self.forms)
        if g.is_constant():
            return self
        return RationalMap([divide_exact(f, g) if f else f for f in self.forms], self.source, self.name)

    def restrict(self, source: Variety) -> "RationalMap":
        return RationalMap(self.forms, source, self.name)

    def to_text(self) -> str:
        return "\n".join([self.ring.describe()] + [str(f) for f in self.forms]) + "\n"


def identity_map(ring: PolyRing) -> RationalMap:
    return RationalMap(ring.gens, None, "id")


# --------------------------------------------------------------------------
# gcd of a tuple
# --------------------------------------------------------------------------

def _binary_gcd_degree(forms: Sequence[Poly], rng) -> int | None:
    """Degree of the gcd of the restrictions to a random line (``None``: line inside base locus)."""
    ring = forms[0].ring
    p = ring.field.p
    n = ring.nvars
    P = random_point(n, ring.field, rng)
    Q = random_point(n, ring.field, rng)
    g = None
    drop = None
    for f in forms:
        u = restrict_to_line(f, P, Q)
        if not u:
            continue
        m = f.degree() - (len(u) - 1)
        drop = m if drop is None else min(drop, m)
        g = u if g is None else uni.gcd(g, u, p)
    if g is None:
        return None
    return len(g) - 1 + drop


def tuple_gcd(forms: Sequence[Poly], rng: random.Random | None = None) -> Poly:
    """Monic gcd of a tuple of forms."""
    nz = [f for f in forms if f]
    if not nz:
        raise MapError("all forms are zero")
    ring = nz[0].ring
    if any(f.is_constant() for f in nz):
        return ring.one()
    if len(nz) == 1:
        return nz[0].monic()
    if ring.field.p is not None:
        rng = rng or random.Random(1)
        for _ in range(4):
            d = _binary_gcd_degree(nz, rng)
            if d == 0:
                return ring.one()
            if d is not None:
                break
    # a nontrivial gcd: compute it exactly, shortest forms first
    nz = sorted(nz, key=lambda f: len(f.terms))
    return poly_gcd_many(nz)


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------

def segre_embed(a: int, b: int, field) -> tuple[RationalMap, Variety]:
    """Segre map ``P^a x P^b -> P^{ab+a+b}`` on the bigraded ring ``(x_0..x_a, x_{a+1}..x_{a+b+1})``."""
    if a < 1 or b < 1:
        raise ValueError("factors must have positive dimension")
    src = PolyRing(a + b + 2, field)
    xs, ys = src.gens[: a + 1], src.gens[a + 1:]
    forms = [x * y for x in xs for y in ys]
    m = RationalMap(forms, None, f"segre({a},{b})")
    tgt = PolyRing((a + 1) * (b + 1), field)
    z = tgt.gens
    rel = []
    for i in range(a + 1):
        for k in range(i + 1, a + 1):
            for j in range(b + 1):
                for l in range(j + 1, b + 1):
                    rel.append(z[i * (b + 1) + j] * z[k * (b + 1) + l] - z[i * (b + 1) + l] * z[k * (b + 1) + j])
    return m, Variety(Ideal(rel, tgt), f"segre({a},{b})")


def segre_bidegree_partition(a: int, b: int) -> list[list[int]]:
    return [list(range(a + 1)), list(range(a + 1, a + b + 2))]


def linear_projection(center, ring: PolyRing | None = None) -> RationalMap:
    """Projection from a linear subspace (a ``LinearSubspace``) given by its equations."""
    ring = ring or center.ring
    if not center.forms:
        raise MapError("cannot project from the whole space")
    if center.dim < 0:
        raise MapError("empty center")
    return RationalMap([f.to_ring(ring) for f in center.forms], None, "projection")


# --------------------------------------------------------------------------
# composition
# --------------------------------------------------------------------------

def compose(outer: RationalMap, inner: RationalMap, reduce_mod_source: bool = False) -> RationalMap:
    """``outer ∘ inner``, gcd-reduced; raises ``MapError`` if identically undefined."""
    if outer.source_nvars != inner.target_nvars:
        raise MapError(f"cannot compose: inner lands in P^{inner.target_nvars - 1}, "
                       f"outer starts in P^{outer.source_nvars - 1}")
    forms = [f.substitute(inner.forms) for f in outer.forms]
    src = inner.source
    if src is not None and not src.ideal.is_zero():
        if all(src.ideal.contains(f) for f in forms):
            raise MapError("composition undefined: inner image lies in the base locus of outer")
        if reduce_mod_source:
            forms = [src.ideal.normal_form(f) for f in forms]
    elif not any(forms):
        raise MapError("composition undefined: all forms vanish")
    return RationalMap(forms, src, f"{outer.name}∘{inner.name}").reduced()


# --------------------------------------------------------------------------
# images
# --------------------------------------------------------------------------

def _product_ring(m: RationalMap, extra_first: int = 0) -> PolyRing:
    n1, m1 = m.source_nvars, m.target_nvars
    names = tuple(f"t{i}" for i in range(extra_first)) + tuple(f"x{i}" for i in range(n1)) + tuple(f"y{j}" for j in range(m1))
    return PolyRing(extra_first + n1 + m1, m.ring.field, elim(extra_first + n1), names)


def graph_ideal(m: RationalMap, saturate: bool = True, rng=None) -> Ideal:
    """Graph of ``m`` in the bigraded ring ``(x, y)``: 2x2 minors of ``(y | F(x))`` plus the source ideal."""
    big = _product_ring(m)
    n1, m1 = m.source_nvars, m.target_nvars
    F = [shift_poly(f, big, 0) for f in m.forms]
    Y = big.gens[n1:]
    gens = [shift_poly(g, big, 0) for g in m.source_ideal().gens]
    for i in range(m1):
        for j in range(i + 1, m1):
            rel = Y[i] * F[j] - Y[j] * F[i]
            if rel:
                gens.append(rel)
    I = Ideal(gens, big)
    if saturate:
        I = I.saturate(Ideal([f for f in F if f], big), rng)
    return I


def image_closure(m: RationalMap, source: Variety | None = None, method: str = "graph",
                  rng=None, name: str = "") -> Variety:
    """Closure of the image of ``source`` (default: the map's source) under ``m``."""
    if source is not None:
        m = m.restrict(source)
    if all(m.source_ideal().contains(f) for f in m.forms):
        raise MapError("map is undefined on the source")
    n1 = m.source_nvars
    tgt = m.target_ring()
    if method == "graph":
        G = graph_ideal(m, True, rng)
    elif method == "kernel":
        big = _product_ring(m)
        Y = big.gens[n1:]
        gens = [shift_poly(g, big, 0) for g in m.source_ideal().gens]
        gens += [y - shift_poly(f, big, 0) for y, f in zip(Y, m.forms)]
        G = Ideal(gens, big)
    else:
        raise ValueError(f"unknown image method {method!r}")
    E = G.eliminate(n1)
    I = Ideal([tgt.from_dict(g.to_dict()) for g in E.gens], tgt)
    if method == "graph":
        I = I.saturate_irrelevant(rng) if not I.is_zero() else I
    return Variety(I, name)


# --------------------------------------------------------------------------
# base locus
# --------------------------------------------------------------------------

def base_locus(m: RationalMap, source: Variety | None = None, rng=None) -> Ideal:
    src = source.ideal if source is not None else m.source_ideal()
    I = Ideal(list(src.gens) + [f for f in m.forms if f], m.ring)
    return I.saturate_irrelevant(rng)


# --------------------------------------------------------------------------
# inversion
# --------------------------------------------------------------------------

@dataclass
class GraphRelation:
    """A relation ``sum_i c_i(y) x_i`` vanishing on the graph; ``coeffs`` are forms of degree ``k`` in ``y``."""

    k: int
    coeffs: list[Poly]


def _y_monomials(m1: int, k: int) -> list[tuple[int, ...]]:
    return PolyRing(m1).monomials_of_degree(k)


def linear_graph_relations(m: RationalMap, k: int, method: str = "linear",
                           sampler: Callable | None = None, rng=None, extra_samples: int = 24) -> list[GraphRelation]:
    """Basis of the relations of bidegree ``(1, k)`` (linear in source, degree ``k`` in target)."""
    fld = m.ring.field
    n1, m1 = m.source_nvars, m.target_nvars
    ty = m.target_ring()
    monos = _y_monomials(m1, k)
    unknowns = [(a, i) for a in monos for i in range(n1)]
    if method == "linear":
        src = m.source_ideal()
        basis = src.groebner() if not src.is_zero() else []
        vals: dict = {(0,) * m1: m.ring.one()}

        def val(a):
            got = vals.get(a)
            if got is None:
                j = next(t for t in range(m1) if a[t])
                b = a[:j] + (a[j] - 1,) + a[j + 1:]
                got = val(b) * m.forms[j]
                vals[a] = got
            return got

        cols = []
        for a, i in unknowns:
            f = val(a) * m.ring.gen(i)
            if basis:
                f = normal_form(f, basis)
            cols.append(f)
        mons = sorted({mm for f in cols for mm in f.terms})
        index = {mm: r for r, mm in enumerate(mons)}
        if fld.p is not None:
            A = np.zeros((max(len(mons), 1), len(cols)), dtype=np.int64)
        else:
            A = [[fld.zero] * len(cols) for _ in range(max(len(mons), 1))]
        for c, f in enumerate(cols):
            for mm, v in f.terms.items():
                if fld.p is not None:
                    A[index[mm], c] = v
                else:
                    A[index[mm]][c] = v
        ker = nullspace(A, fld, len(cols))
    elif method == "sample":
        if sampler is None or fld.p is None:
            raise MapError("sampling needs a point sampler over a prime field")
        p = fld.p
        nsamples = len(unknowns) + extra_samples
        rows = np.zeros((nsamples, len(unknowns)), dtype=np.int64)
        for r in range(nsamples):
            x = sampler(rng)
            y = m.evaluate(x)
            ypows = [[pow(v, e, p) for e in range(k + 1)] for v in y]
            for c, (a, i) in enumerate(unknowns):
                v = x[i]
                for j, e in enumerate(a):
                    if e:
                        v = v * ypows[j][e] % p
                rows[r, c] = v
        ker = nullspace(rows, fld, len(unknowns))
    else:
        raise ValueError(f"unknown relation method {method!r}")
    out = []
    for vec in ker:
        coeffs = [dict() for _ in range(n1)]
        for c, (a, i) in enumerate(unknowns):
            if vec[c]:
                coeffs[i][a] = vec[c]
        out.append(GraphRelation(k, [ty.from_dict(d) for d in coeffs]))
    return out


def graph_relations_from_groebner(m: RationalMap, kmax: int, rng=None) -> list[GraphRelation]:
    """Relations of source degree one read off a block-order basis of the saturated graph ideal."""
    G = graph_ideal(m, True, rng)
    n1, m1 = m.source_nvars, m.target_nvars
    ty = m.target_ring()
    out = []
    for g in G.groebner(elim(n1)):
        d = g.to_dict()
        xdegs = {sum(e[:n1]) for e in d}
        if xdegs != {1}:
            continue
        ydegs = {sum(e[n1:]) for e in d}
        if len(ydegs) != 1:
            continue
        k = ydegs.pop()
        if k > kmax:
            continue
        coeffs = [dict() for _ in range(n1)]
        for e, c in d.items():
            i = next(t for t in range(n1) if e[t])
            coeffs[i][e[n1:]] = c
        out.append(GraphRelation(k, [ty.from_dict(c) for c in coeffs]))
    return sorted(out, key=lambda r: r.k)


def invert_birational(m: RationalMap, source: Variety | None = None, target: Variety | None = None,
                      method: str = "linear", sampler: Callable | None = None, max_degree: int = 12,
                      rng: random.Random | None = None, verify: str | None = "symbolic",
                      target_point: Sequence | None = None) -> RationalMap:
    """Inverse of a birational map from the signed maximal minors of graph relations.

    ``method`` chooses how the relations linear in the source coordinates are
    found: ``linear`` (normal forms modulo the source ideal), ``sample``
    (evaluation at sampled source points) or ``graph`` (Gröbner basis of the
    saturated graph ideal).  ``verify`` checks the round trip ``symbolic``-ally,
    at random ``points``, or not at all.
    """
    rng = rng or random.Random(7)
    if source is not None:
        m = m.restrict(source)
    fld = m.ring.field
    n1 = m.source_nvars
    if target_point is None:
        if target is None or target.ideal.is_zero():
            target_point = random_point(m.target_nvars, fld, rng)
        else:
            if sampler is None and m.source is not None and not m.source.ideal.is_zero():
                raise MapError("a point sampler is needed for a proper target")
            x = sampler(rng) if sampler is not None else random_point(n1, fld, rng)
            target_point = m.evaluate(x)
    chosen: list[GraphRelation] = []
    rows: list[list] = []
    pool: list[GraphRelation] = []
    if method == "graph":
        pool = graph_relations_from_groebner(m, max_degree, rng)
    for k in range(1, max_degree + 1):
        if method == "graph":
            batch = [r for r in pool if r.k == k]
        else:
            batch = linear_graph_relations(m, k, method, sampler, rng)
        for rel in batch:
            row = [c.evaluate(target_point) for c in rel.coeffs]
            if not any(row):
                continue
            if rank(rows + [row], fld) > len(rows):
                rows.append(row)
                chosen.append(rel)
                if len(rows) == n1 - 1:
                    break
        if len(rows) == n1 - 1:
            break
    if len(rows) < n1 - 1:
        raise MapError("map not birational or extraction failed: no corank-one system of graph relations")
    matrix = [rel.coeffs for rel in chosen]
    ty = m.target_ring()
    forms = maximal_minors_signed(matrix, ty)
    inv = RationalMap(forms, target, f"inverse({m.name})").reduced()
    log.debug("inverse of %s: degree %d from relation degrees %s", m.name, inv.degree, [r.k for r in chosen])
    if verify:
        if not round_trip(m, inv, method=verify, rng=rng, sampler=sampler):
            raise MapError("round trip check failed for the computed inverse")
    return inv


# --------------------------------------------------------------------------
# round trip
# --------------------------------------------------------------------------

def proportional_to_identity(forms: Sequence[Poly], ideal: Ideal | None) -> bool:
    """Every 2x2 minor of ``(x | forms)`` lies in ``ideal``, and not all forms do."""
    ring = forms[0].ring
    xs = ring.gens
    n = ring.nvars
    inI = (lambda f: not f) if ideal is None or ideal.is_zero() else ideal.contains
    if all(inI(f) for f in forms):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if not inI(xs[i] * forms[j] - xs[j] * forms[i]):
                return False
    return True


def round_trip(m: RationalMap, inv: RationalMap, method: str = "symbolic", rng=None,
               sampler: Callable | None = None, samples: int = 20) -> bool:
    """``inv ∘ m`` is the identity on the source of ``m``."""
    if method == "symbolic":
        forms = [f.substitute(m.forms) for f in inv.forms]
        return proportional_to_identity(forms, m.source_ideal())
    if method == "points":
        rng = rng or random.Random(3)
        fld = m.ring.field
        p = fld.p
        ok = 0
        for _ in range(samples * 5):
            x = sampler(rng) if sampler is not None else random_point(m.source_nvars, fld, rng)
            y = m.evaluate(x)
            if not any(y):
                continue
            z = inv.evaluate(y)
            if not any(z):
                continue
            for i in range(len(x)):
                for j in range(i + 1, len(x)):
                    d = fld.sub(fld.mul(x[i], z[j]), fld.mul(x[j], z[i]))
                    if d:
                        return False
            ok += 1
            if ok >= samples:
                return True
        return ok > 0
    raise ValueError(f"unknown round trip method {method!r}")
