"""Birational maps from the Pfaffian cubic V to P^2 built from two skew lines.

``V`` contains ``ℓ1 = {λ2 = λ3 = 0}`` and ``ℓ2 = {λ0 = λ1 = 0}`` (planted by
the block structure of the skew matrices).  A point ``p`` of V spans a plane
with each line; the two pencils give ``V -> P^1 x P^1``, which contracts the
five common transversals of ``ℓ1, ℓ2`` on V.  Following with the Segre
embedding and the projection of the quadric from one of its points ``q``:

* ``two-skew-lines``: ``q`` general.  The two rulings through ``q`` pull back
  to conics, so seven curves are contracted (and ``q`` gives a base point).
* ``blowdown6``: ``q`` is the image of a transversal ``T``.  Then the map is a
  morphism contracting the other four transversals and the two lines residual
  to ``ℓ1 ∪ T`` and ``ℓ2 ∪ T``: six disjoint lines.
"""

from __future__ import annotations

import itertools
import logging
import random

from ..algebra import univariate as uni
from ..algebra.field import Field
from ..algebra.ring import Poly, PolyRing
from ..geometry.linear import LinearSubspace
from ..geometry.maps import RationalMap
from ..geometry.sampling import restrict_to_line
from ..ideals.ideal import Ideal
from .construction import ExceptionalCurve
from .instances import GenericityError, ScrollInstance, build_palatini

log = logging.getLogger(__name__)

MODES = ("two-skew-lines", "blowdown6")


def find_transversals(F: Poly, rng=None) -> list[tuple[list, list]] | None:
    """The five common transversals of ``ℓ1`` and ``ℓ2`` on ``{F = 0}``, if all are rational."""
    out = rational_transversals(F, rng)
    return out if out is not None and len(out) == 5 else None


def rational_transversals(F: Poly, rng=None) -> list[tuple[list, list]] | None:
    """The common transversals of ``ℓ1`` and ``ℓ2`` on ``{F = 0}`` defined over the field.

    A transversal joins ``p(s) = (s0, s1, 0, 0)`` to ``q(t) = (0, 0, t0, t1)``;
    the line lies on the cubic iff the mixed terms of ``F(μ p + ν q)``
    vanish.  The ``μ^2 ν`` term is ``a(s) t0 + b(s) t1``, which fixes
    ``t = (b : -a)``; the ``μ ν^2`` term then gives a quintic in ``s``.
    Returns pairs of points ``(p, q)``, or ``None`` for a degenerate cubic.
    """
    fld = F.ring.field
    p = fld.p
    if p is None:
        raise ValueError("transversals are searched over a prime field")
    S = PolyRing(4, fld, names=("s0", "s1", "t0", "t1"))
    s0, s1, t0, t1 = S.gens
    zero = S.zero()
    ps, qs = [s0, s1, zero, zero], [zero, zero, t0, t1]
    grads = [F.diff(k) for k in range(4)]
    G1 = sum((qs[k] * grads[k].substitute(ps) for k in range(4)), zero)
    G2 = sum((ps[k] * grads[k].substitute(qs) for k in range(4)), zero)

    def part(G, texp):
        """Coefficient of ``t^texp`` as a little-endian polynomial in ``σ = s1 / s0``."""
        out = [0] * 8
        for e, c in G.to_dict().items():
            if e[2:] == texp:
                out[e[1]] = (out[e[1]] + c) % p
        return uni.trim(out)

    a, b = part(G1, (1, 0)), part(G1, (0, 1))
    c, e, g = part(G2, (2, 0)), part(G2, (1, 1)), part(G2, (0, 2))
    R = uni.add(uni.sub(uni.mul(c, uni.mul(b, b, p), p), uni.mul(e, uni.mul(a, b, p), p), p),
                uni.mul(g, uni.mul(a, a, p), p), p)
    if not R:
        return None
    svals = [[1, r] for r in uni.roots(R, p, rng)]
    if uni.degree(R) < 5:
        svals.append([0, 1])
    out = []
    for sv in svals:
        av = G1.evaluate([sv[0], sv[1], 1, 0])
        bv = G1.evaluate([sv[0], sv[1], 0, 1])
        if not av and not bv:
            return None
        P1 = [sv[0], sv[1], 0, 0]
        Q1 = [0, 0, bv, fld.neg(av)]
        if any(restrict_to_line(F, P1, Q1)):
            return None
        out.append((P1, Q1))
    return out


def build_palatini_with_lines(field: Field, seed: int = 1, retries: int = 400) -> ScrollInstance:
    """A Palatini scroll whose planted skew lines have five rational transversals."""
    if field.p is None:
        raise ValueError("the skew-lines construction runs over a prime field")

    def accept(As, F, rng):
        return find_transversals(F, rng) is not None

    inst = build_palatini(field, seed, retries, plant_lines=True, accept=accept)
    trans = find_transversals(inst.V.ideal.gens[0], random.Random(seed))
    inst.data["transversals"] = [[list(map(int, p)), list(map(int, q))] for p, q in trans]
    return inst


def _segre(alpha, beta, fld):
    return [fld.mul(alpha[0], beta[0]), fld.mul(alpha[0], beta[1]), fld.mul(alpha[1], beta[0]),
            fld.mul(alpha[1], beta[1])]


def _pencil_values(p, q):
    """``(φ1, φ2)`` of a transversal through ``p ∈ ℓ1`` and ``q ∈ ℓ2``: ``((λ2 : λ3), (λ0 : λ1))``."""
    return [q[2], q[3]], [p[0], p[1]]


def _residual(I: Ideal, removes: list[Ideal], rng) -> Ideal:
    J = I
    for K in removes:
        J = J.saturate(K, rng)
    return J.saturate_irrelevant(rng)


def build_v_palatini(inst: ScrollInstance, mode: str = "two-skew-lines",
                     rng: random.Random | None = None) -> tuple[RationalMap, list[ExceptionalCurve]]:
    """``v: V -> P^2`` and the curves it contracts, with their images (``δ`` left to the caller)."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    rng = rng or random.Random(inst.seed)
    fld = inst.field
    L = inst.lam_ring
    lam = L.gens
    trans = inst.data.get("transversals")
    if not trans:
        raise GenericityError("instance carries no transversals")
    if mode == "two-skew-lines":
        while True:
            alpha = [fld.random_nonzero(rng), fld.random_nonzero(rng)]
            beta = [fld.random_nonzero(rng), fld.random_nonzero(rng)]
            if all(not _same_ratio(alpha, _pencil_values(p, q)[0], fld) and
                   not _same_ratio(beta, _pencil_values(p, q)[1], fld) for p, q in trans):
                break
        kept = list(range(len(trans)))
    else:
        alpha, beta = _pencil_values(*trans[0])
        kept = list(range(1, len(trans)))
    q = _segre(alpha, beta, fld)
    P3 = PolyRing(4, fld)
    proj = LinearSubspace.from_points(P3, [q]).forms
    w = [lam[2] * lam[0], lam[2] * lam[1], lam[3] * lam[0], lam[3] * lam[1]]
    v_forms = [f.substitute(w) for f in proj]
    v = RationalMap(v_forms, inst.V, "v")

    def image(wpt):
        return [f.evaluate(wpt) for f in proj]

    ell1 = Ideal([lam[2], lam[3]], L)
    ell2 = Ideal([lam[0], lam[1]], L)
    I_V = inst.V.ideal
    out = []
    for j in kept:
        p, qq = trans[j]
        Tj = LinearSubspace.from_points(L, [p, qq]).ideal()
        out.append(ExceptionalCurve(f"T{j}", Tj, image(_segre(*_pencil_values(p, qq), fld))))
    T0 = LinearSubspace.from_points(L, trans[0]).ideal() if mode == "blowdown6" else None
    # the ruling {alpha} x P^1 comes from the plane alpha1 λ2 - alpha0 λ3 = 0 through ℓ1
    plane1 = Ideal([lam[2].scale(alpha[1]) - lam[3].scale(alpha[0])], L)
    plane2 = Ideal([lam[0].scale(beta[1]) - lam[1].scale(beta[0])], L)
    rem1 = [ell1] + ([T0] if T0 is not None else [])
    rem2 = [ell2] + ([T0] if T0 is not None else [])
    D1 = _residual(I_V + plane1, rem1, rng)
    D2 = _residual(I_V + plane2, rem2, rng)
    other_b = [fld.add(beta[0], 1), beta[1]]
    other_a = [fld.add(alpha[0], 1), alpha[1]]
    out.append(ExceptionalCurve("D1", D1, image(_segre(alpha, other_b, fld))))
    out.append(ExceptionalCurve("D2", D2, image(_segre(other_a, beta, fld))))
    return v, out


def _same_ratio(a, b, fld) -> bool:
    return fld.sub(fld.mul(a[0], b[1]), fld.mul(a[1], b[0])) == 0


def blowdown_checks(inst: ScrollInstance, v: RationalMap, exceptional: list[ExceptionalCurve], rng) -> dict:
    """Exceptional curves: dimensions, degrees, pairwise disjointness, contraction to their points."""
    fld = inst.field
    degs = []
    disjoint = True
    for i, ex in enumerate(exceptional):
        H = ex.ideal.hilbert()
        degs.append((H.dim, H.degree))
        for other in exceptional[i + 1:]:
            J = (ex.ideal + other.ideal).saturate_irrelevant(rng)
            if not (J.is_unit() or J.hilbert().dim < 0):
                disjoint = False
    contracted = True
    for ex in exceptional:
        # a random point of the curve goes to the recorded image
        pt = _point_on(ex.ideal, rng)
        if pt is None:
            continue
        img = v.evaluate(pt)
        if any(img) and not _proportional(img, ex.image, fld):
            contracted = False
    return {"degrees": degs, "disjoint": disjoint, "contracted": contracted}


def _proportional(a, b, fld) -> bool:
    return all(fld.sub(fld.mul(a[i], b[j]), fld.mul(a[j], b[i])) == 0
               for i in range(len(a)) for j in range(i + 1, len(a)))


def _point_on(I: Ideal, rng) -> list | None:
    """A rational point on a plane curve of low degree: random lines in its plane."""
    fld = I.ring.field
    lin = [g for g in I.groebner() if g.degree() == 1]
    plane = LinearSubspace.from_forms(I.ring, lin)
    if plane.dim == 1:
        return plane.random_point(rng)
    for _ in range(200):
        a, b = plane.random_point(rng), plane.random_point(rng)
        acc: list[int] = []
        for g in I.gens:
            vals = restrict_to_line(g, a, b)
            acc = vals if not acc else uni.gcd(acc, vals, fld.p)
        if uni.degree(acc) < 1:
            continue
        for r in uni.roots(acc, fld.p, rng):
            pt = [fld.add(x, fld.mul(r, y)) for x, y in zip(a, b)]
            if any(pt) and all(not g.evaluate(pt) for g in I.gens):
                return pt
    return None


def lines_on_surface(F: Poly) -> list[tuple[list, list]]:
    """Every line over the prime field on ``{F = 0}`` in P^3, by exhaustion (small primes only).

    Lines are enumerated as row-reduced 2x4 matrices.
    """
    fld = F.ring.field
    p = fld.p
    if p is None or p > 31:
        raise ValueError("line enumeration needs a prime field with p <= 31")
    out = []
    for i in range(4):
        for j in range(i + 1, 4):
            free0 = [c for c in range(i + 1, 4) if c != j]
            free1 = list(range(j + 1, 4))
            slots = [(0, c) for c in free0] + [(1, c) for c in free1]
            for vals in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * 4, [0] * 4]
                rows[0][i], rows[1][j] = 1, 1
                for (r, c), x in zip(slots, vals):
                    rows[r][c] = x
                if not any(restrict_to_line(F, rows[0], rows[1])):
                    out.append((rows[0], rows[1]))
    return out
