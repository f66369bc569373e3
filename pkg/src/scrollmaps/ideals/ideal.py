"""Ideals of a polynomial ring with cached Gröbner bases.

Saturation and colon are computed without iterating quotients:

* ``I : J^inf`` for homogeneous ``I`` and ``J`` generated by linear forms uses a
  general linear form ``l`` of ``J``, moves ``l`` to the last variable and
  strips powers of that variable from a grevlex basis.
* other saturations go through ``I + (1 - t f)`` with ``f`` a general element
  of ``J`` (or each generator in turn when asked to be exact).
* intersections and colons use an auxiliary variable ``t`` and elimination.
"""

from __future__ import annotations

import random
import time
from typing import Iterable, Sequence

from .. import cache as _cache
from ..algebra.linalg import inverse
from ..algebra.orders import GREVLEX, MonomialOrder, elim
from ..algebra.ring import Poly, PolyRing, RingError
from .groebner import groebner_basis, normal_form
from .hilbert import HilbertData, hilbert_numerator


# --------------------------------------------------------------------------
# ring plumbing
# --------------------------------------------------------------------------

def extend_ring(ring: PolyRing, k: int, order: MonomialOrder, prefix: str = "t") -> PolyRing:
    """``ring`` with ``k`` new variables placed first."""
    names = tuple(f"{prefix}{i}" for i in range(k)) + ring.names
    return PolyRing(ring.nvars + k, ring.field, order, names)


def shift_poly(f: Poly, target: PolyRing, offset: int) -> Poly:
    """Copy ``f`` into ``target`` sending ``x_i`` to ``target.x_{i+offset}``."""
    pad = (0,) * offset
    tail = target.nvars - offset - f.ring.nvars
    return target.from_dict({pad + e + (0,) * tail: c for e, c in f.to_dict().items()})


def drop_leading(f: Poly, target: PolyRing, k: int) -> Poly:
    """Inverse of ``shift_poly`` for polynomials free of the first ``k`` variables."""
    out = {}
    for e, c in f.to_dict().items():
        if any(e[:k]):
            raise RingError("polynomial involves eliminated variables")
        out[e[k:]] = c
    return target.from_dict(out)


def divide_exact(f: Poly, g: Poly) -> Poly:
    """``f / g`` when ``g`` divides ``f``; raises ``ArithmeticError`` otherwise."""
    ring = f.ring
    g = g.to_ring(ring)
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    fld = ring.field
    glm, ginv = g.lm(), fld.inv(g.lc())
    guard = ring.enc.guard
    r = f
    q = {}
    while r:
        m = r.lm()
        if (m - glm) & guard:
            raise ArithmeticError("not an exact division")
        c = fld.mul(r.lc(), ginv)
        q[m - glm] = c
        r = r - g.mul_term(m - glm, c)
    return Poly(ring, q)


def poly_gcd_many(polys: Sequence[Poly]) -> Poly:
    """Greatest common divisor of several polynomials (monic), via ideal intersection."""
    polys = [p for p in polys if p]
    ring = polys[0].ring
    if len(polys) == 1:
        return polys[0].monic()
    g = polys[0]
    for h in polys[1:]:
        g = poly_gcd(g, h)
        if g.is_constant():
            return ring.one()
    return g.monic()


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """``gcd(f, g) = f g / lcm(f, g)``, with the lcm generating ``(f) ∩ (g)``."""
    ring = f.ring
    if f.is_constant() or g.is_constant():
        return ring.one()
    inter = Ideal([f], ring).intersect(Ideal([g], ring))
    gens = inter.groebner()
    lcm = min(gens, key=lambda h: (h.degree(), len(h.terms)))
    return divide_exact(f * g, lcm.to_ring(ring)).monic()


# --------------------------------------------------------------------------
# the ideal
# --------------------------------------------------------------------------

class Ideal:
    """A finitely generated ideal; Gröbner bases are computed lazily per order."""

    def __init__(self, gens: Iterable[Poly], ring: PolyRing | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise RingError("an empty generator list needs an explicit ring")
            ring = gens[0].ring
        self.ring = ring.with_order(GREVLEX) if ring.order != GREVLEX else ring
        self.gens = [g.to_ring(self.ring) for g in gens if g]
        self._gb: dict[MonomialOrder, list[Poly]] = {}
        self._hilbert: HilbertData | None = None

    # construction ------------------------------------------------------------
    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        return cls([], ring)

    @classmethod
    def irrelevant(cls, ring: PolyRing) -> "Ideal":
        return cls(ring.gens, ring)

    def __repr__(self):
        return f"Ideal({len(self.gens)} generators in {self.ring.nvars} variables)"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    @property
    def field(self):
        return self.ring.field

    def _coerce(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            if not other.ring.same_space(self.ring):
                raise RingError("ideals live in different rings")
            return other
        return Ideal(list(other), self.ring)

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    # Gröbner bases -------------------------------------------------------------
    def groebner(self, order: MonomialOrder = GREVLEX) -> list[Poly]:
        gb = self._gb.get(order)
        if gb is None:
            r = self.ring.with_order(order)
            store = _cache.active()
            key = store.key(r, order, self.gens) if store is not None and self.gens else None
            if key is not None:
                gb = store.get(key, r)
            if gb is None:
                t0 = time.perf_counter()
                gb = groebner_basis(self.gens, r)
                if key is not None and time.perf_counter() - t0 >= _cache.MIN_SECONDS:
                    store.put(key, r, gb)
            self._gb[order] = gb
        return gb

    def set_groebner(self, basis: Sequence[Poly], order: MonomialOrder = GREVLEX) -> None:
        """Install a basis known to be a reduced Gröbner basis (e.g. from a cache)."""
        r = self.ring.with_order(order)
        self._gb[order] = [b.to_ring(r) for b in basis]

    def normal_form(self, f: Poly, order: MonomialOrder = GREVLEX) -> Poly:
        gb = self.groebner(order)
        r = self.ring.with_order(order)
        return normal_form(f.to_ring(r), gb).to_ring(self.ring)

    def contains(self, f: Poly) -> bool:
        if not f:
            return True
        return not self.normal_form(f)

    __contains__ = contains

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def issubset(self, other) -> bool:
        other = self._coerce(other)
        return all(other.contains(g) for g in self.gens)

    def equals(self, other) -> bool:
        other = self._coerce(other)
        return self.issubset(other) and other.issubset(self)

    def minimal_generators(self) -> list[Poly]:
        """For homogeneous ideals: drop generators lying in the ideal of the others."""
        gens = sorted(self.gens, key=lambda g: (g.degree(), len(g.terms)))
        keep: list[Poly] = []
        for g in gens:
            if keep and Ideal(keep, self.ring).contains(g):
                continue
            keep.append(g)
        return keep

    # arithmetic -------------------------------------------------------------------
    def __add__(self, other) -> "Ideal":
        other = self._coerce(other)
        return Ideal(self.gens + other.gens, self.ring)

    def __mul__(self, other) -> "Ideal":
        other = self._coerce(other)
        return Ideal([a * b for a in self.gens for b in other.gens], self.ring)

    def power(self, k: int) -> "Ideal":
        if k == 0:
            return Ideal([self.ring.one()], self.ring)
        out = self
        for _ in range(k - 1):
            out = Ideal(Ideal(out * self).groebner(), self.ring)
        return out

    def substitute(self, images: Sequence[Poly]) -> "Ideal":
        ring = images[0].ring
        return Ideal([g.substitute(images) for g in self.gens], ring)

    # elimination ------------------------------------------------------------------
    def eliminate(self, k: int, drop: bool = True) -> "Ideal":
        """``I ∩ K[x_k, ..., x_{n-1}]``; with ``drop`` the result lives in the smaller ring."""
        n = self.ring.nvars
        gb = self.groebner(elim(k))
        keep = [g for g in gb if not any(v < k for v in g.variables())]
        if not drop:
            return Ideal(keep, self.ring)
        small = PolyRing(n - k, self.field, GREVLEX, self.ring.names[k:])
        return Ideal([drop_leading(g, small, k) for g in keep], small)

    def intersect(self, other) -> "Ideal":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Ideal.zero(self.ring)
        big = extend_ring(self.ring, 1, elim(1))
        t = big.gen(0)
        one = big.one()
        gens = [t * shift_poly(g, big, 1) for g in self.gens]
        gens += [(one - t) * shift_poly(g, big, 1) for g in other.gens]
        return Ideal(gens, big).eliminate(1).relabel(self.ring)

    def relabel(self, ring: PolyRing) -> "Ideal":
        """Same generators read in ``ring`` (same variable count and field)."""
        out = []
        for g in self.gens:
            out.append(ring.from_dict(g.to_dict()))
        return Ideal(out, ring)

    def quotient_by_element(self, f: Poly) -> "Ideal":
        """``I : f`` via ``(I ∩ (f)) / f``."""
        f = f.to_ring(self.ring)
        if not f:
            return Ideal([self.ring.one()], self.ring)
        inter = self.intersect(Ideal([f], self.ring))
        return Ideal([divide_exact(g, f) for g in inter.groebner()], self.ring)

    def colon(self, other) -> "Ideal":
        """``I : J``, the intersection of ``I : g`` over generators ``g`` of ``J``."""
        other = self._coerce(other)
        if other.is_zero():
            return Ideal([self.ring.one()], self.ring)
        out = None
        for g in other.gens:
            q = self.quotient_by_element(g)
            out = q if out is None else out.intersect(q)
        return out

    # saturation ---------------------------------------------------------------------
    def saturate_element(self, f: Poly) -> "Ideal":
        """``I : f^inf`` through ``I + (1 - t f)``."""
        f = f.to_ring(self.ring)
        if f.is_constant():
            return self if f else Ideal([self.ring.one()], self.ring)
        if f.degree() == 1 and self.is_homogeneous and f.is_homogeneous():
            return self._saturate_linear(f)
        big = extend_ring(self.ring, 1, elim(1))
        t = big.gen(0)
        gens = [shift_poly(g, big, 1) for g in self.gens]
        gens.append(big.one() - t * shift_poly(f, big, 1))
        return Ideal(gens, big).eliminate(1).relabel(self.ring)

    def _saturate_linear(self, l: Poly) -> "Ideal":
        """Homogeneous ``I : l^inf`` for a linear form ``l``.

        With coordinates ``z = A x`` whose last row is ``l``, a grevlex basis of
        the transformed ideal stays a basis after dividing each element by the
        largest power of ``z_{n-1}`` dividing it.
        """
        ring = self.ring
        n = ring.nvars
        fld = ring.field
        coeffs = [l.coefficient(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
        piv = max(i for i in range(n) if coeffs[i])
        A = []
        for i in range(n - 1):
            row = [fld.zero] * n
            row[i if i < piv else i + 1] = fld.one
            A.append(row)
        A.append(coeffs)
        Ainv = inverse(A, fld)
        # x = Ainv z
        xs = [ring.linear_form(Ainv[i]) for i in range(n)]
        zs = [ring.linear_form(A[i]) for i in range(n)]
        moved = Ideal([g.substitute(xs) for g in self.gens], ring)
        last = ring.enc.raw_shifts[n - 1]
        unit = ring.enc.units[n - 1]
        stripped = []
        for g in moved.groebner():
            k = min((m >> last) & 0xFFFF for m in g.terms)
            if k:
                g = Poly(ring, {m - k * unit: c for m, c in g.terms.items()})
            stripped.append(g)
        return Ideal([g.substitute(zs) for g in stripped], ring)

    def saturate(self, other, rng: random.Random | None = None, exact: bool = False) -> "Ideal":
        """``I : J^inf``.

        By default a general element of ``J`` is used (a random combination of
        the generators after raising them to a common degree), which is correct
        away from a proper closed set of choices.  ``exact`` intersects the
        saturations by the individual generators.
        """
        other = self._coerce(other)
        if other.is_zero():
            return Ideal([self.ring.one()], self.ring) if not self.is_zero() else self
        if rng is None:
            rng = random.Random(0x5A7)
        if exact:
            out = None
            for g in other.gens:
                part = self.saturate_element(g)
                out = part if out is None else out.intersect(part)
            return out
        fld = self.field
        gens = other.gens
        degs = [g.degree() for g in gens]
        D = max(degs)
        ring = self.ring
        if D == 1 or all(d == D for d in degs):
            f = ring.zero()
            for g in gens:
                f = f + g.scale(fld.random_nonzero(rng))
            if not f:
                return self.saturate(other, rng, exact=True)
            return self.saturate_element(f)
        f = ring.zero()
        for g, d in zip(gens, degs):
            f = f + g * ring.random_form(D - d, rng)
        return self.saturate_element(f)

    def saturate_irrelevant(self, rng: random.Random | None = None) -> "Ideal":
        return self.saturate(Ideal.irrelevant(self.ring), rng)

    # Hilbert data -------------------------------------------------------------------
    def hilbert(self) -> HilbertData:
        if self._hilbert is None:
            if not self.is_homogeneous:
                raise RingError("Hilbert series needs a homogeneous ideal")
            lms = [g.exponents()[0] for g in self.groebner()]
            self._hilbert = HilbertData(self.ring.nvars, hilbert_numerator(lms, self.ring.nvars))
        return self._hilbert

    def dim(self) -> int:
        return self.hilbert().dim

    def degree(self) -> int:
        return self.hilbert().degree

    def arithmetic_genus(self) -> int | None:
        return self.hilbert().arithmetic_genus

    def graded_piece_dimension(self, d: int) -> int:
        """``dim_K (I)_d``, the number of independent degree-``d`` forms in ``I``."""
        from math import comb

        n = self.ring.nvars
        return comb(d + n - 1, n - 1) - self.hilbert().hilbert_function(d)

    def zero_dim_length(self) -> int:
        """Length of a zero-dimensional projective scheme (its Hilbert polynomial)."""
        h = self.hilbert()
        if h.dim > 0:
            raise RingError(f"scheme has dimension {h.dim}, not 0")
        return h.degree

    # text ------------------------------------------------------------------------
    def to_text(self) -> str:
        return "\n".join([self.ring.describe()] + [str(g) for g in self.gens]) + "\n"

    def basis_text(self, order: MonomialOrder = GREVLEX) -> str:
        return "\n".join(str(g) for g in self.groebner(order))


def ideal_from_text(text: str, field=None) -> Ideal:
    """Parse the header-plus-one-polynomial-per-line format written by ``to_text``."""
    from ..algebra.field import GF, QQ

    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("ring "):
        raise RingError("missing ring header")
    fields = dict(tok.split("=", 1) for tok in lines[0].split()[2:])
    fname = lines[0].split()[1]
    if field is None:
        field = QQ if fname == "Q" else GF(int(fname[3:-1]))
    names = fields["vars"].split(",") if fields.get("vars") else None
    ring = PolyRing(int(fields["nvars"]), field, GREVLEX, names)
    return Ideal([ring.parse(ln) for ln in lines[1:]], ring)
