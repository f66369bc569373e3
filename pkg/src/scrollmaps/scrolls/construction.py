"""From a scroll X to a birational map onto P^3 and back.

Given a codimension-two space ``Λ = {l0 = l1 = 0}`` and a birational map
``v: V -> P^2`` from the base, ``α = (h, π_Λ)`` with ``h = A v u`` sends X
birationally onto the Segre threefold P^2 x P^1.  Composing with the
projection from the line ``F1 ∩ F2`` gives

    g = (h0 l1, h1 l1, h2 l1, h2 l0):  X -> P^3,

whose inverse ``f`` is the web of surfaces Σ.  A point ``y`` goes back to the
point of the fibre over ``v^{-1}(y0 : y1 : y2)`` on the hyperplane
``y2 l0 - y3 l1 = 0``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from ..algebra.linalg import inverse, random_invertible, rank
from ..algebra.ring import Poly, PolyRing
from ..geometry.linear import LinearSubspace
from ..geometry.local import singular_locus
from ..geometry.maps import RationalMap, image_closure, invert_birational, proportional_to_identity
from ..geometry.sampling import random_point
from ..geometry.variety import Variety
from ..ideals.ideal import Ideal
from .instances import GenericityError, ScrollInstance

log = logging.getLogger(__name__)

# P = (0:0:0:1) is the image of F1, B1 = {y2 = y3 = 0} the image of F2
P_POINT = (0, 0, 0, 1)


@dataclass
class ExceptionalCurve:
    """A curve on the base contracted by ``v``; its preimage in X has degree ``delta``."""

    name: str
    ideal: Ideal            # on the λ ring
    image: list             # v(Δ) in the P^2 of h, after the change A
    delta: int | None = None


@dataclass
class Construction:
    inst: ScrollInstance
    l0: Poly
    l1: Poly
    A: list                              # 3x3 change of coordinates on P^2
    v: RationalMap | None                # V -> P^2 (None: V is P^2 and v is the identity)
    h: RationalMap
    g: RationalMap
    gamma_base: Poly                     # u(C) = V ∩ {gamma_base = 0}
    gamma: Ideal                         # h(C) in P^2
    n: int
    exceptional: list[ExceptionalCurve] = field(default_factory=list)
    C: Variety | None = None
    f: RationalMap | None = None
    target: PolyRing | None = None

    @property
    def field(self):
        return self.inst.field

    @property
    def plane_ring(self) -> PolyRing:
        return self.gamma.ring

    @property
    def lam_to_plane(self) -> RationalMap:
        """``A v`` as a map from the base to P^2."""
        L = self.inst.lam_ring
        base = self.v.forms if self.v is not None else L.gens
        forms = [sum((base[j].scale(self.A[i][j]) for j in range(3)), L.zero()) for i in range(3)]
        return RationalMap(forms, self.inst.V, "Av")

    def B1(self) -> Ideal:
        T = self.target
        return Ideal([T.gen(2), T.gen(3)], T)

    def P_ideal(self) -> Ideal:
        T = self.target
        return Ideal([T.gen(0), T.gen(1), T.gen(2)], T)

    def line_through_P(self, q) -> Ideal:
        """π_L({q} x P^1): the line joining P and (q, 0)."""
        return LinearSubspace.from_points(self.target, [list(q) + [0], list(P_POINT)]).ideal()


def _linear_forms_from(ring: PolyRing, rng):
    fld = ring.field
    return ring.linear_form([fld.random(rng) for _ in range(ring.nvars)])


def section_curve(inst: ScrollInstance, l0: Poly, l1: Poly) -> Variety:
    """The curve ``X ∩ {l0 = l1 = 0}`` in P^5."""
    I = inst.X.ideal + Ideal([l0, l1], inst.ring)
    return Variety(I.saturate_irrelevant(), "C")


def curve_checks(inst: ScrollInstance, l0: Poly, l1: Poly, rng) -> dict:
    """Smoothness of C and avoidance of Sing X, computed in coordinates on Λ."""
    Lam = LinearSubspace.from_forms(inst.ring, [l0, l1])
    S = PolyRing(Lam.dim + 1, inst.field)
    par = Lam.parametrization(S)
    gens = [g.substitute(par) for g in inst.X.ideal.gens]
    IC = Ideal(gens, S).saturate_irrelevant(rng)
    smooth = singular_locus(IC, gens, rng)
    n = inst.ring.nvars
    c = n - 1 - inst.X.dim
    from ..algebra.polymatrix import det

    fld = inst.field
    Xg = inst.X.ideal.minimal_generators()
    # the Jacobian of X restricted to Λ; its rank drops exactly along Sing X
    J = [[g.diff(j).substitute(par) for j in range(n)] for g in Xg]
    # c x c minors of random projections P J Q cut Sing X ∩ Λ set-theoretically
    rng_minors = random.Random(rng.random())
    combos = []
    for _ in range(6):
        rows = [[sum((J[k][j].scale(fld.random(rng_minors)) for k in range(len(J))), S.zero())
                 for j in range(n)] for _ in range(c)]
        Q = [[fld.random(rng_minors) for _ in range(c)] for _ in range(n)]
        cols = [[sum((row[j].scale(Q[j][t]) for j in range(n)), S.zero()) for t in range(c)] for row in rows]
        combos.append(det(cols, S))
    meet = (IC + Ideal(combos, S)).saturate_irrelevant(rng)
    return {
        "C_smooth": smooth.is_unit() or smooth.hilbert().dim < 0,
        "C_avoids_sing_X": meet.is_unit() or meet.hilbert().dim < 0,
        "C_degree": IC.degree(),
        "C_genus": IC.arithmetic_genus(),
        "C_dim": IC.dim(),
    }


def construct_g(inst: ScrollInstance, rng: random.Random, v: RationalMap | None = None,
                exceptional: list[ExceptionalCurve] | None = None, check_curve: bool = True,
                lam_forms: tuple[Poly, Poly] | None = None) -> Construction:
    """Pick Λ (unless ``lam_forms`` is given) and the coordinate change A at random and build ``g``.

    ``exceptional`` curves carry ``v``-images in the original P^2 coordinates;
    they are moved by ``A`` here.
    """
    R = inst.ring
    fld = inst.field
    l0, l1 = lam_forms or (_linear_forms_from(R, rng), _linear_forms_from(R, rng))
    A = random_invertible(3, fld, rng)
    base = v.forms if v is not None else inst.lam_ring.gens
    # h = A v u on X
    vu = [b.substitute(inst.u.forms) for b in base]
    h_forms = [sum((vu[j].scale(A[i][j]) for j in range(3)), R.zero()) for i in range(3)]
    h = RationalMap(h_forms, inst.X, "h")
    g = RationalMap([h_forms[0] * l1, h_forms[1] * l1, h_forms[2] * l1, h_forms[2] * l0], inst.X, "g")
    gb = inst.section_curve(l0, l1)
    if not gb or gb.is_constant():
        raise GenericityError("Λ meets every fibre or none")
    P2 = PolyRing(3, fld, names=("a0", "a1", "a2"))
    con = Construction(inst, l0, l1, A, v, h, g, gb, Ideal.zero(P2), 0, [],
                       target=PolyRing(4, fld, names=("y0", "y1", "y2", "y3")))
    con.gamma = plane_curve_image(con, gb)
    con.n = con.gamma.degree()
    for ex in exceptional or []:
        q = [sum(fld.mul(A[i][j], ex.image[j]) for j in range(3)) for i in range(3)]
        con.exceptional.append(ExceptionalCurve(ex.name, ex.ideal, [fld(c) for c in q], ex.delta))
    if check_curve:
        con.C = section_curve(inst, l0, l1)
    return con


def plane_curve_image(con: Construction, base_form: Poly) -> Ideal:
    """Image in P^2 (after ``A v``) of the curve ``V ∩ {base_form = 0}``."""
    inst = con.inst
    P2 = PolyRing(3, inst.field, names=("a0", "a1", "a2"))
    if con.v is None:
        Ainv = inverse(con.A, inst.field)
        lam = [P2.linear_form(Ainv[i]) for i in range(3)]
        G = base_form.substitute(lam).to_ring(P2)
        return Ideal([G.primitive() if inst.field.p is None else G.monic()], P2)
    curve = Variety((inst.V.ideal + Ideal([base_form], inst.lam_ring)).saturate_irrelevant(), "u(C)")
    img = image_closure(con.lam_to_plane, curve, method="graph", rng=random.Random(5))
    return Ideal(img.ideal.gens, P2)


# --------------------------------------------------------------------------
# the inverse
# --------------------------------------------------------------------------

def compute_sigma(con: Construction, rng: random.Random, method: str | None = None) -> RationalMap:
    """Inverse of ``g``: the forms of the web Σ on P^3."""
    inst = con.inst
    if method is None:
        method = "linear" if inst.name == "bordiga" else "sample"
    sampler = inst.sampler() if method == "sample" else None
    f = invert_birational(con.g, inst.X, None, method=method, sampler=sampler, rng=rng, verify=None,
                          max_degree=con.n + 2)
    T = con.target
    f = RationalMap([c.to_ring(T) for c in f.forms], None, "f")
    con.f = f
    return f


def sigma_by_minors(con: Construction) -> RationalMap:
    """Bordiga closed form: maximal minors of ``[N(λ(y)); y2 l0 - y3 l1]`` with ``λ = A^{-1}(y0, y1, y2)``.

    The first rows say that ``x`` lies on the fibre over ``λ``, the last that
    ``π_Λ(x) = (y3 : y2)``.
    """
    inst = con.inst
    if inst.name != "bordiga":
        raise ValueError("closed form only for the Bordiga scroll")
    T = con.target
    fld = inst.field
    Ainv = inverse(con.A, fld)
    lam = [T.linear_form(list(Ainv[i]) + [0]) for i in range(3)]
    rows = [[c.substitute(lam).to_ring(T) for c in row] for row in inst.fiber_rows]
    y = T.gens
    n = inst.ring.nvars
    last = []
    for i in range(n):
        e = tuple(int(j == i) for j in range(n))
        last.append(y[2].scale(con.l0.coefficient(e)) - y[3].scale(con.l1.coefficient(e)))
    from ..algebra.polymatrix import maximal_minors_signed

    forms = maximal_minors_signed(rows + [last], T)
    return RationalMap(forms, None, "f_minors").reduced()


def verify_inverse(con: Construction, rng: random.Random, mode: str = "symbolic", samples: int = 12) -> dict:
    """``f(P^3) ⊆ X`` and ``g ∘ f ∝ id``; symbolically or at random points of P^3."""
    f, g, X = con.f, con.g, con.inst.X
    fld = con.field
    if mode == "symbolic":
        into_X = all(not gen.substitute(f.forms) for gen in X.ideal.gens)
        back = [c.substitute(f.forms) for c in g.forms]
        return {"f_into_X": into_X, "g_after_f_identity": proportional_to_identity(back, None)}
    into_X = True
    ident = True
    done = 0
    while done < samples:
        y = random_point(4, fld, rng)
        x = f.evaluate(y)
        if not any(x):
            continue
        if any(gen.evaluate(x) for gen in X.ideal.gens):
            into_X = False
        z = g.evaluate(x)
        if not any(z):
            continue
        for i in range(4):
            for j in range(i + 1, 4):
                if fld.sub(fld.mul(y[i], z[j]), fld.mul(y[j], z[i])):
                    ident = False
        done += 1
    return {"f_into_X": into_X, "g_after_f_identity": ident}


def forms_independent(forms, field) -> bool:
    monos = sorted({m for f in forms for m in f.terms})
    M = [[f.terms.get(m, field.zero) for m in monos] for f in forms]
    return rank(M, field) == len(forms)


def base_ideal(con: Construction, rng=None) -> Ideal:
    T = con.target
    return Ideal([c for c in con.f.forms if c], T).saturate_irrelevant(rng)

