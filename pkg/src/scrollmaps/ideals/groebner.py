"""Gröbner bases: Buchberger (any field) and an F4-style engine (prime fields).

Both engines share the Gebauer–Möller pair update and sugar-degree pair
selection and return the reduced basis as a list of monic ``Poly``.  The F4
engine reduces a whole batch of S-polynomials at once: reducer rows are kept
sparse, the S-polynomial rows are a dense int64 block that is swept column by
column, and the remaining block is brought to reduced echelon form.
"""

from __future__ import annotations

import heapq
import logging
from typing import Sequence

import numpy as np

from ..algebra.linalg import rref_modp
from ..algebra.ring import Poly, PolyRing

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# normal forms on raw term dicts
# --------------------------------------------------------------------------

def _find_divisor(m: int, lms: Sequence[int], guard: int):
    for k, l in enumerate(lms):
        if not ((m - l) & guard):
            return k
    return -1


def nf_terms(terms: dict, basis: Sequence[dict], lms: Sequence[int], ring: PolyRing, full: bool = True) -> dict:
    """Remainder of ``terms`` modulo monic ``basis`` (leading monomials ``lms``)."""
    guard = ring.enc.guard
    p = ring.field.p
    r = dict(terms)
    heap = [-m for m in r]
    heapq.heapify(heap)
    result = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = -pop(heap)
        c = r.pop(m, None)
        if not c:
            continue
        k = _find_divisor(m, lms, guard)
        if k < 0:
            if not full:
                result[m] = c
                for mm, cc in r.items():
                    if cc:
                        result[mm] = cc
                return result
            result[m] = c
            continue
        q = m - lms[k]
        lmk = lms[k]
        get = r.get
        if p is None:
            for mg, cg in basis[k].items():
                if mg == lmk:
                    continue
                mm = q + mg
                v = get(mm)
                if v is None:
                    r[mm] = -c * cg
                    push(heap, -mm)
                else:
                    r[mm] = v - c * cg
        else:
            for mg, cg in basis[k].items():
                if mg == lmk:
                    continue
                mm = q + mg
                v = get(mm)
                if v is None:
                    r[mm] = (-c * cg) % p
                    push(heap, -mm)
                else:
                    r[mm] = (v - c * cg) % p
    return result


def _monic_terms(terms: dict, ring: PolyRing) -> dict:
    lm = max(terms)
    c = terms[lm]
    f = ring.field
    if c == 1:
        return terms
    inv = f.inv(c)
    if f.p is None:
        return {m: v * inv for m, v in terms.items()}
    p = f.p
    return {m: v * inv % p for m, v in terms.items()}


# --------------------------------------------------------------------------
# pair bookkeeping
# --------------------------------------------------------------------------

class _PairSet:
    """Critical pairs with the Gebauer–Möller installation."""

    def __init__(self, ring: PolyRing):
        self.enc = ring.enc
        self.lms: list[int] = []
        self.sugar: list[int] = []
        self.active: list[int] = []
        self.pairs: list[tuple] = []  # (sugar, lcm, i, j)

    def pair_sugar(self, i: int, j: int, lcm: int) -> int:
        deg = self.enc.degree
        dl = deg(lcm)
        return max(self.sugar[i] + dl - deg(self.lms[i]), self.sugar[j] + dl - deg(self.lms[j]))

    def add(self, lm: int, sugar: int) -> int:
        enc = self.enc
        divides = enc.divides
        h = len(self.lms)
        self.lms.append(lm)
        self.sugar.append(sugar)
        lms = self.lms
        cand = [(i, enc.lcm(lms[i], lm)) for i in self.active]
        kept = []
        for idx, (i, L) in enumerate(cand):
            if enc.coprime(lms[i], lm):
                kept.append((i, L, True))
                continue
            dominated = False
            for _, L2 in cand[idx + 1:]:
                if divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                for _, L2, _c in kept:
                    if divides(L2, L):
                        dominated = True
                        break
            if not dominated:
                kept.append((i, L, False))
        new_pairs = [(self.pair_sugar(i, h, L), L, i, h) for i, L, cop in kept if not cop]
        old = []
        for pr in self.pairs:
            _, L, i, j = pr
            if divides(lm, L) and enc.lcm(lms[i], lm) != L and enc.lcm(lm, lms[j]) != L:
                continue
            old.append(pr)
        self.pairs = old + new_pairs
        self.active = [i for i in self.active if not divides(lm, lms[i])] + [h]
        return h

    def pop_min(self):
        k = min(range(len(self.pairs)), key=lambda t: (self.pairs[t][0], self.pairs[t][1]))
        return self.pairs.pop(k)

    def pop_batch(self):
        s = min(pr[0] for pr in self.pairs)
        batch = [pr for pr in self.pairs if pr[0] == s]
        self.pairs = [pr for pr in self.pairs if pr[0] != s]
        return s, batch


def _initial_sugar(terms: dict, ring: PolyRing) -> int:
    deg = ring.enc.degree
    return max(deg(m) for m in terms)


# --------------------------------------------------------------------------
# Buchberger
# --------------------------------------------------------------------------

def buchberger(gens: Sequence[Poly], ring: PolyRing) -> list[Poly]:
    polys: list[dict] = []
    ps = _PairSet(ring)
    for g in sorted((g.to_ring(ring) for g in gens if g), key=lambda g: g.lm()):
        t = _monic_terms(g.terms, ring)
        polys.append(t)
        ps.add(max(t), _initial_sugar(t, ring))
    p = ring.field.p
    while ps.pairs:
        sug, L, i, j = ps.pop_min()
        fi, fj = polys[i], polys[j]
        qi, qj = L - ps.lms[i], L - ps.lms[j]
        s: dict = {}
        for m, c in fi.items():
            s[m + qi] = c
        for m, c in fj.items():
            mm = m + qj
            v = s.get(mm, 0) - c
            if p is not None:
                v %= p
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)
        if not s:
            continue
        act = ps.active
        r = nf_terms(s, [polys[k] for k in act], [ps.lms[k] for k in act], ring)
        if not r:
            continue
        r = _monic_terms(r, ring)
        polys.append(r)
        ps.add(max(r), sug)
    basis = [polys[k] for k in ps.active]
    return _interreduce(basis, ring)


def _minimalize(basis: list[dict], ring: PolyRing) -> list[dict]:
    divides = ring.enc.divides
    items = sorted(basis, key=max)
    out: list[dict] = []
    for t in items:
        lm = max(t)
        if any(divides(max(o), lm) for o in out):
            continue
        out.append(t)
    return out


def _interreduce(basis: list[dict], ring: PolyRing) -> list[Poly]:
    basis = _minimalize(basis, ring)
    lms = [max(t) for t in basis]
    out = []
    for k, t in enumerate(basis):
        others = basis[:k] + basis[k + 1:]
        olms = lms[:k] + lms[k + 1:]
        lm = lms[k]
        tail = {m: c for m, c in t.items() if m != lm}
        red = nf_terms(tail, others, olms, ring)
        red[lm] = t[lm]
        out.append(Poly(ring, _monic_terms(red, ring)))
    out.sort(key=lambda g: g.lm())
    return out


# --------------------------------------------------------------------------
# F4
# --------------------------------------------------------------------------

class _F4:
    def __init__(self, ring: PolyRing):
        if ring.field.p is None:
            raise ValueError("the F4 engine needs a prime field")
        self.ring = ring
        self.p = ring.field.p
        self.polys: list[dict] = []
        self.ps = _PairSet(ring)
        self.guard = ring.enc.guard
        self.stats = {"steps": 0, "max_cols": 0, "max_srows": 0}

    def add(self, terms: dict, sugar: int):
        terms = _monic_terms(terms, self.ring)
        self.polys.append(terms)
        self.ps.add(max(terms), sugar)

    def _reducer(self, m: int):
        act = self.ps.active
        lms = self.ps.lms
        guard = self.guard
        best = None
        for k in act:
            l = lms[k]
            if not ((m - l) & guard):
                if best is None or len(self.polys[k]) < len(self.polys[best]):
                    best = k
        return best

    def _build(self, srow_specs, pivot_specs, skip_leading=False):
        """Symbolic preprocessing then sparse/dense reduction.

        ``srow_specs``: list of (multiplier, poly index) rows to be reduced;
        ``pivot_specs``: dict lm -> (multiplier, poly index) of initial pivots.
        Returns the reduced dense block and the column monomials.
        """
        polys = self.polys
        pivots = dict(pivot_specs)
        seen = set(pivots)
        stack = []
        for q, k in list(srow_specs) + list(pivots.values()):
            for m in polys[k]:
                mm = m + q
                if mm not in seen:
                    seen.add(mm)
                    stack.append(mm)
        while stack:
            m = stack.pop()
            if m in pivots:
                continue
            k = self._reducer(m)
            if k is None:
                continue
            q = m - self.ps.lms[k]
            pivots[m] = (q, k)
            for mg in polys[k]:
                mm = mg + q
                if mm not in seen:
                    seen.add(mm)
                    stack.append(mm)
        cols = sorted(seen, reverse=True)
        colidx = {m: i for i, m in enumerate(cols)}
        ncols = len(cols)
        p = self.p
        S = np.zeros((len(srow_specs), ncols), dtype=np.int64)
        for r, (q, k) in enumerate(srow_specs):
            for m, c in polys[k].items():
                S[r, colidx[m + q]] = c
        lead_cols = None
        if skip_leading:
            lead_cols = [colidx[max(polys[k]) + q] for q, k in srow_specs]
            for r, c in enumerate(lead_cols):
                S[r, c] = 0
        prows = {}
        for m, (q, k) in pivots.items():
            t = polys[k]
            idx = np.fromiter((colidx[mg + q] for mg in t), dtype=np.int64, count=len(t))
            vals = np.fromiter(t.values(), dtype=np.int64, count=len(t))
            prows[colidx[m]] = (idx, vals)
        self.stats["max_cols"] = max(self.stats["max_cols"], ncols)
        self.stats["max_srows"] = max(self.stats["max_srows"], len(srow_specs))
        if len(srow_specs):
            for c in sorted(prows):
                colv = S[:, c]
                nz = np.flatnonzero(colv)
                if not nz.size:
                    continue
                idx, vals = prows[c]
                if nz.size == 1:
                    r = int(nz[0])
                    f = int(colv[r])
                    S[r, idx] = (S[r, idx] - f * vals) % p
                else:
                    f = colv[nz]
                    ix = np.ix_(nz, idx)
                    S[ix] = (S[ix] - np.outer(f, vals)) % p
        return S, cols, set(prows), lead_cols

    def step(self, sugar, batch):
        lms = self.ps.lms
        pivots: dict = {}
        srows = []
        seen_rows = set()
        for _, L, i, j in batch:
            for k in (i, j):
                spec = (L - lms[k], k)
                if spec in seen_rows:
                    continue
                seen_rows.add(spec)
                if L not in pivots:
                    pivots[L] = spec
                else:
                    srows.append(spec)
        S, cols, pivcols, _ = self._build(srows, pivots)
        self.stats["steps"] += 1
        if not S.shape[0]:
            return
        free = [c for c in range(len(cols)) if c not in pivcols]
        if not free:
            return
        D = S[:, free]
        R, piv = rref_modp(D, self.p, copy=False)
        for row in R:
            nzc = np.flatnonzero(row)
            terms = {cols[free[c]]: int(row[c]) for c in nzc}
            self.add(terms, sugar)

    def run(self):
        while self.ps.pairs:
            sugar, batch = self.ps.pop_batch()
            self.step(sugar, batch)

    def reduced_basis(self) -> list[Poly]:
        ring = self.ring
        basis = _minimalize([self.polys[k] for k in self.ps.active], ring)
        # rebuild a clean pair set holding only the minimal basis
        self.polys = list(basis)
        ps = _PairSet(ring)
        ps.lms = [max(t) for t in basis]
        ps.sugar = [0] * len(basis)
        ps.active = list(range(len(basis)))
        self.ps = ps
        specs = [(0, k) for k in range(len(basis))]
        S, cols, _, lead_cols = self._build(specs, {}, skip_leading=True)
        out = []
        for r, k in enumerate(range(len(basis))):
            row = S[r]
            nzc = np.flatnonzero(row)
            terms = {cols[c]: int(row[c]) for c in nzc}
            terms[cols[lead_cols[r]]] = 1
            out.append(Poly(ring, terms))
        out.sort(key=lambda g: g.lm())
        return out


def f4(gens: Sequence[Poly], ring: PolyRing) -> list[Poly]:
    eng = _F4(ring)
    for g in sorted((g.to_ring(ring) for g in gens if g), key=lambda g: g.lm()):
        eng.add(dict(g.terms), _initial_sugar(g.terms, ring))
    eng.run()
    out = eng.reduced_basis()
    log.debug("f4: %d steps, max %d cols, max %d rows, %d elements", eng.stats["steps"],
              eng.stats["max_cols"], eng.stats["max_srows"], len(out))
    return out


def groebner_basis(gens: Sequence[Poly], ring: PolyRing, method: str = "auto") -> list[Poly]:
    """Reduced Gröbner basis of ``gens`` in ``ring`` (its order)."""
    gens = [g.to_ring(ring) for g in gens if g]
    if not gens:
        return []
    if any(g.is_constant() for g in gens):
        return [ring.one()]
    if method == "auto":
        method = "buchberger" if ring.field.p is None else "f4"
    if method == "f4":
        return f4(gens, ring)
    if method == "buchberger":
        return buchberger(gens, ring)
    raise ValueError(f"unknown Gröbner method {method!r}")


def s_polynomial(f: Poly, g: Poly) -> Poly:
    ring = f.ring
    L = ring.enc.lcm(f.lm(), g.lm())
    fi = f.monic().mul_term(L - f.lm(), 1)
    gj = g.monic().mul_term(L - g.lm(), 1)
    return fi - gj


def normal_form(f: Poly, basis: Sequence[Poly]) -> Poly:
    ring = basis[0].ring if basis else f.ring
    f = f.to_ring(ring)
    if not basis:
        return f
    polys = [_monic_terms(b.terms, ring) for b in basis]
    return Poly(ring, nf_terms(f.terms, polys, [max(t) for t in polys], ring))


def is_groebner(basis: Sequence[Poly]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = [b for b in basis if b]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if normal_form(s_polynomial(basis[a], basis[b]), basis):
                return False
    return True
