"""Multivariate polynomials over an exact field.

``PolyRing`` fixes the variable count, the field and the monomial order;
``Poly`` is an immutable-by-convention mapping from packed monomials to
nonzero coefficients.  Changing order means moving to a sibling ring via
``PolyRing.with_order`` and ``Poly.to_ring``.
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .field import QQ, Field, FieldError
from .orders import GREVLEX, Encoding, MonomialOrder


class RingError(ValueError):
    pass


class PolyRing:
    def __init__(self, nvars: int, field: Field = QQ, order: MonomialOrder = GREVLEX, names=None):
        self.nvars = nvars
        self.field = field
        self.order = order
        if names is None:
            names = tuple(f"x{i}" for i in range(nvars))
        self.names = tuple(names)
        if len(self.names) != nvars:
            raise RingError("one name per variable")
        self.enc = Encoding(nvars, order)
        self._siblings = {order: self}

    # identity -----------------------------------------------------------
    def key(self):
        return (self.nvars, self.field.p, self.order, self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"PolyRing({self.nvars}, {self.field!r}, {self.order})"

    def describe(self) -> str:
        p = "Q" if self.field.p is None else f"GF({self.field.p})"
        return f"ring {p} nvars={self.nvars} order={self.order} vars={','.join(self.names)}"

    def same_space(self, other: "PolyRing") -> bool:
        return self.nvars == other.nvars and self.field == other.field

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        r = self._siblings.get(order)
        if r is None:
            r = PolyRing(self.nvars, self.field, order, self.names)
            r._siblings = self._siblings
            self._siblings[order] = r
        return r

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.nvars, field, self.order, self.names)

    # element constructors ----------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {0: c} if c else {})

    def gen(self, i: int) -> "Poly":
        return Poly(self, {self.enc.units[i]: self.field.one})

    @property
    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {self.enc.encode(exps): c} if c else {})

    def from_dict(self, d: dict) -> "Poly":
        """Build from ``{exponent tuple: coefficient}``."""
        f = self.field
        enc = self.enc.encode
        terms = {}
        for e, c in d.items():
            c = f(c)
            if c:
                m = enc(e)
                terms[m] = f.add(terms.get(m, f.zero), c)
                if not terms[m]:
                    del terms[m]
        return Poly(self, terms)

    def linear_form(self, coeffs: Sequence) -> "Poly":
        f = self.field
        terms = {}
        for u, c in zip(self.enc.units, coeffs):
            c = f(c)
            if c:
                terms[u] = c
        return Poly(self, terms)

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        return list(_compositions(d, self.nvars))

    def random_form(self, d: int, rng, bound: int = 100) -> "Poly":
        """A dense random homogeneous form of degree ``d``."""
        return self.from_dict({e: self.field.random(rng, bound) for e in self.monomials_of_degree(d)})

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)


@functools.lru_cache(maxsize=None)
def _compositions_cached(d: int, n: int) -> tuple:
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in _compositions_cached(d - a, n - 1):
            out.append((a,) + rest)
    return tuple(out)


def _compositions(d: int, n: int):
    return _compositions_cached(d, n)


class Poly:
    """Polynomial: ``terms`` maps packed monomials to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # basic protocol -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.same_space(other.ring) and self._canon() == other._canon()
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def _canon(self):
        if self.ring.order == GREVLEX:
            return self.terms
        return self.to_ring(self.ring.with_order(GREVLEX)).terms

    def __hash__(self):
        return hash(frozenset(self._canon().items()))

    def _check(self, other: "Poly"):
        if self.ring is not other.ring and self.ring != other.ring:
            if not self.ring.same_space(other.ring):
                raise RingError("polynomials from different rings")
            return other.to_ring(self.ring)
        return other

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return self._check(other)
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        p = self.ring.field.p
        res = dict(self.terms)
        get = res.get
        for m, c in other.terms.items():
            v = get(m, 0) + c
            if p is not None:
                v %= p
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Poly(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p is None:
            return Poly(self.ring, {m: -c for m, c in self.terms.items()})
        return Poly(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        p = self.ring.field.p
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        res: dict = {}
        get = res.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = m1 + m2
                res[m] = get(m, 0) + c1 * c2
        if p is None:
            res = {m: c for m, c in res.items() if c}
        else:
            res = {m: c % p for m, c in res.items() if c % p}
        return Poly(self.ring, res)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        if f.p is None:
            return Poly(self.ring, {m: v * c for m, v in self.terms.items()})
        p = f.p
        return Poly(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, mono: int, c) -> "Poly":
        p = self.ring.field.p
        if p is None:
            return Poly(self.ring, {m + mono: v * c for m, v in self.terms.items()})
        return Poly(self.ring, {m + mono: v * c % p for m, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # leading data -------------------------------------------------------
    def lm(self) -> int:
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def sorted_terms(self) -> list[tuple[int, object]]:
        return sorted(self.terms.items(), reverse=True)

    def exponents(self) -> list[tuple[int, ...]]:
        dec = self.ring.enc.decode
        return [dec(m) for m, _ in self.sorted_terms()]

    def to_dict(self) -> dict:
        dec = self.ring.enc.decode
        return {dec(m): c for m, c in self.terms.items()}

    def coefficient(self, exps) -> object:
        return self.terms.get(self.ring.enc.encode(exps), self.ring.field.zero)

    # degrees ------------------------------------------------------------
    def degree(self) -> int:
        if not self.terms:
            return -1
        deg = self.ring.enc.degree
        return max(deg(m) for m in self.terms)

    def homogeneity(self, partition=None):
        """Common degree of all terms, or ``None``.

        With ``partition`` (a list of variable-index groups) returns the tuple
        of multidegrees instead.
        """
        if not self.terms:
            return None
        if partition is None:
            deg = self.ring.enc.degree
            degs = {deg(m) for m in self.terms}
            return degs.pop() if len(degs) == 1 else None
        dec = self.ring.enc.decode
        found = None
        for m in self.terms:
            e = dec(m)
            md = tuple(sum(e[i] for i in grp) for grp in partition)
            if found is None:
                found = md
            elif md != found:
                return None
        return found

    def is_homogeneous(self) -> bool:
        return not self.terms or self.homogeneity() is not None

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def homogeneous_part(self, d: int) -> "Poly":
        deg = self.ring.enc.degree
        return Poly(self.ring, {m: c for m, c in self.terms.items() if deg(m) == d})

    def variables(self) -> set[int]:
        dec = self.ring.enc.decode
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(dec(m)) if e)
        return used

    # content over Q -------------------------------------------------------
    def content_primitive(self):
        """Split ``self = content * primitive`` over Q (integer primitive part, positive lc)."""
        if self.ring.field.p is not None:
            if not self.terms:
                return self.ring.field.zero, self
            lc = self.lc()
            return lc, self.monic()
        if not self.terms:
            return Fraction(0), self
        from math import gcd

        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c * den))
        content = Fraction(g, den)
        if self.lc() < 0:
            content = -content
        return content, self.scale(1 / content)

    def primitive(self) -> "Poly":
        return self.content_primitive()[1]

    # calculus and evaluation ---------------------------------------------
    def diff(self, i: int) -> "Poly":
        f = self.ring.field
        enc = self.ring.enc
        unit = enc.units[i]
        shift = enc.raw_shifts[i]
        res = {}
        for m, c in self.terms.items():
            e = (m >> shift) & 0xFFFF
            if e:
                v = f.mul(c, f(e))
                if v:
                    res[m - unit] = v
        return Poly(self.ring, res)

    def evaluate(self, point: Sequence):
        """Value at a point given as field elements (or a polynomial images list)."""
        f = self.ring.field
        p = f.p
        dec = self.ring.enc.decode
        pts = [f(a) for a in point]
        total = f.zero
        cache: dict = {}
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(dec(m)):
                if e:
                    key = (i, e)
                    pw = cache.get(key)
                    if pw is None:
                        pw = pow(pts[i], e, p) if p is not None else pts[i] ** e
                        cache[key] = pw
                    v = v * pw
                    if p is not None:
                        v %= p
            total = total + v
        return total % p if p is not None else total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Ring homomorphism ``x_i -> images[i]``."""
        if len(images) != self.ring.nvars:
            raise RingError(f"expected {self.ring.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].ring
        for g in images:
            if not g.ring.same_space(target):
                raise RingError("images live in different rings")
        images = [g.to_ring(target) for g in images]
        return _substitute(self, images, target)

    def to_ring(self, ring: PolyRing) -> "Poly":
        if ring is self.ring:
            return self
        if ring.nvars != self.ring.nvars:
            raise RingError("variable counts differ")
        if ring.field != self.ring.field:
            f = ring.field
            dec, enc = self.ring.enc.decode, ring.enc.encode
            terms = {}
            for m, c in self.terms.items():
                v = f(c if self.ring.field.p is None else self.ring.field.lift(c))
                if v:
                    terms[enc(dec(m))] = v
            return Poly(ring, terms)
        if ring.order == self.ring.order:
            return Poly(ring, self.terms)
        dec, enc = self.ring.enc.decode, ring.enc.encode
        return Poly(ring, {enc(dec(m)): c for m, c in self.terms.items()})

    # text -----------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!s})"


def _substitute(f: Poly, images: list[Poly], target: PolyRing) -> Poly:
    n = f.ring.nvars
    dec = f.ring.enc.decode
    powers: list[dict] = [dict() for _ in range(n)]

    def power(i, e):
        got = powers[i].get(e)
        if got is None:
            if e == 1:
                got = images[i]
            else:
                half = power(i, e // 2)
                got = half * half
                if e % 2:
                    got = got * images[i]
            powers[i][e] = got
        return got

    # group terms by the exponent of variable 0 recursively (Horner-like)
    terms = [(dec(m), c) for m, c in f.terms.items()]
    return _subst_rec(terms, 0, n, power, target)


def _subst_rec(terms, i, n, power, target):
    fld = target.field
    if i == n:
        c = fld.zero
        for _, v in terms:
            c = fld.add(c, v)
        return target.constant(c) if fld.p is not None else target.constant(c)
    groups: dict = {}
    for e, c in terms:
        groups.setdefault(e[i], []).append((e, c))
    acc = target.zero()
    for k in sorted(groups):
        part = _subst_rec(groups[k], i + 1, n, power, target)
        if k:
            part = part * power(i, k)
        acc = acc + part
    return acc


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    fld = f.ring.field
    names = f.ring.names
    out = []
    for m, c in f.sorted_terms():
        e = f.ring.enc.decode(m)
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if fld.p is None:
            c = Fraction(c)
            neg = c < 0
            a = -c if neg else c
        else:
            neg, a = False, c
        cs = fld.to_str(a)
        if mono:
            term = mono if cs == "1" else f"{cs}*{mono}"
        else:
            term = cs
        if not out:
            out.append(("-" if neg else "") + term)
        else:
            out.append((" - " if neg else " + ") + term)
    return "".join(out)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Inverse of ``format_poly``: ``3*x0^2*x1 - 1/2*x2 + 5``."""
    idx = {n: i for i, n in enumerate(ring.names)}
    fld = ring.field
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ring.zero()
    acc: dict = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m:
            raise RingError(f"cannot parse {text!r}")
        sign, body = m.group(1), m.group(2)
        pos = m.end()
        coeff = Fraction(1)
        exps = [0] * ring.nvars
        for factor in body.split("*"):
            if not factor:
                raise RingError(f"cannot parse {text!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            name, _, pw = factor.partition("^")
            if name not in idx:
                raise RingError(f"unknown variable {name!r}")
            exps[idx[name]] += int(pw) if pw else 1
        if sign == "-":
            coeff = -coeff
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + coeff
    try:
        return ring.from_dict(acc)
    except FieldError as exc:
        raise RingError(str(exc)) from exc


def polys_in(ring: PolyRing, polys: Iterable[Poly]) -> list[Poly]:
    return [g.to_ring(ring) for g in polys]
