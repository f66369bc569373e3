"""Structure of the web Σ: base locus components, intersections and the monoid shape.

Every quantity that enters a cross-check is computed on its own route:
``B2`` as the image of the curve C' (limits of ``α`` along the fibres meeting
Λ), ``E∞`` as a surface on X, ``n`` as the degree of ``h(C)``, and the base
scheme from the forms of Σ.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from ..algebra.ring import Poly
from ..geometry.local import (cone_from_point, contains_neighborhood, is_reduced_points,
                              multiplicity_at_point, order_at_point, tangent_cone_at_point, tangent_cone_ideal)
from ..geometry.maps import RationalMap, image_closure
from ..geometry.variety import Variety
from ..ideals.ideal import Ideal, divide_exact
from ..report import VerificationReport
from .construction import P_POINT, Construction, base_ideal, forms_independent, plane_curve_image

log = logging.getLogger(__name__)


@dataclass
class SigmaData:
    """Computed invariants of Σ, one field per row of the summary table."""

    n: int
    degree: int
    d: int
    deg_E_inf: int
    deg_B2: int
    genus_B2: int
    mult_B2: int
    B1_dot_B2: int
    lines: list[dict] = field(default_factory=list)
    tangents_distinct: bool = False
    base_hilbert: list = field(default_factory=list)
    ideals: dict = field(default_factory=dict, repr=False)

    def row(self) -> dict:
        return {
            "n": self.n, "deg Σ": self.degree, "deg B1": 1, "deg B2": self.deg_B2, "p_a(B2)": self.genus_B2,
            "mult_P B2": self.mult_B2, "B1·B2": self.B1_dot_B2, "deg E∞": self.deg_E_inf,
            "lines": [{k: v for k, v in ln.items()} for ln in self.lines],
        }


def _equal_up_to_scalar(f: Poly, g: Poly) -> bool:
    if not f or not g:
        return False
    return f.monic() == g.monic()


def _length(I: Ideal, rng) -> int:
    J = I.saturate_irrelevant(rng)
    if J.is_unit() or J.hilbert().dim < 0:
        return 0
    return J.zero_dim_length()


def _pullback(con: Construction, base_ideal_: Ideal) -> Ideal:
    """``u^{-1}`` of a subscheme of the base, correct in top dimension.

    Each presentation of ``u`` is undefined along its own surface of X; pulling
    back through two of them leaves only lower-dimensional junk.
    """
    inst = con.inst
    R = inst.ring
    gens = []
    for forms in inst.u_presentations[:2]:
        gens += [g.substitute(forms) for g in base_ideal_.gens]
    return inst.X.ideal + Ideal([g for g in gens if g], R)


def e_infinity(con: Construction) -> Variety:
    """E∞ = u^{-1}(u(C)): the fibres through C (exact in top dimension)."""
    inst = con.inst
    curve = inst.V.ideal + Ideal([con.gamma_base], inst.lam_ring)
    return Variety(_pullback(con, curve), "E_inf")


def preimage_degree(con: Construction, curve: Ideal) -> int:
    return _pullback(con, curve).degree()


def e_two(con: Construction, rng) -> Variety:
    """E2 = g^{-1}(B1): fibres over the moving part of ``{(A v)_2 = 0}``."""
    inst = con.inst
    L = inst.lam_ring
    curve = inst.V.ideal + Ideal([con.lam_to_plane.forms[2]], L)
    if con.v is not None:
        curve = curve.saturate(inst.V.ideal + Ideal(con.v.forms, L), rng)
    return Variety(_pullback(con, curve), "E2")


def e_one(con: Construction) -> Ideal:
    """E1 = g^{-1}(P) on X, with the fibres over the base points of h removed."""
    inst = con.inst
    R = inst.ring
    h = con.h.forms
    # one general combination of the h-forms vanishes on the base locus of h but not on E1
    hc = h[0] + h[1].scale(3) + h[2].scale(7)
    return (inst.X.ideal + Ideal(con.g.forms[:3], R)).saturate_element(hc)


def b2_by_image(con: Construction, rng) -> Variety:
    """``π_L(C')``: for ``λ ∈ u(C)`` the point ``(a0 b1, a1 b1, a2 b1, a2 b0)``.

    ``a = A v(λ)`` and ``b`` is the value of ``(l0 : l1)`` along the fibre,
    which is well defined although the fibre meets Λ.
    """
    inst = con.inst
    L = inst.lam_ring
    a = con.lam_to_plane.forms
    b0, b1 = inst.limit_direction(con.l0, con.l1, rng)
    psi = RationalMap([a[0] * b1, a[1] * b1, a[2] * b1, a[2] * b0], None, "psi")
    curve = Variety((inst.V.ideal + Ideal([con.gamma_base], L)).saturate_irrelevant(rng), "u(C)")
    img = image_closure(psi, curve, method="graph", rng=rng, name="B2")
    T = con.target
    return Variety(Ideal([T.from_dict(g.to_dict()) for g in img.ideal.gens], T), "B2")


def gamma_cone(con: Construction, plane: Ideal) -> Ideal:
    """The cone with vertex P over a plane curve: same equations in ``y0, y1, y2``."""
    T = con.target
    return Ideal([T.from_dict({e + (0,): c for e, c in g.to_dict().items()}) for g in plane.gens], T)


def _random_member(con: Construction, rng) -> tuple[Poly, list]:
    fld = con.field
    c = [fld.random(rng) for _ in range(len(con.f.forms))]
    s = con.target.zero()
    for ci, fi in zip(c, con.f.forms):
        s = s + fi.scale(ci)
    return s, c


def analyze_sigma(con: Construction, rep: VerificationReport, rng: random.Random,
                  B2_route: str = "image") -> SigmaData:
    """Checks on the base locus, intersections and the monoid structure of Σ."""
    inst = con.inst
    T = con.target
    n = con.n
    d = inst.X.degree
    f = con.f
    fld = con.field

    with rep.phase("sigma"):
        rep.check("sigma.degree", "Σ has degree n + 1", n + 1, f.degree)
        rep.check("sigma.web", "Σ is a web: four independent forms", True, forms_independent(f.forms, fld))
        Bs = base_ideal(con, rng)
        rep.record("base_scheme.hilbert_polynomial", [str(c) for c in Bs.hilbert().hilbert_polynomial()])

    with rep.phase("exceptional"):
        for ex in con.exceptional:
            pre = _pullback(con, ex.ideal).hilbert()
            delta = pre.degree if pre.dim == 2 else 0
            if ex.delta is not None and ex.delta != delta:
                rep.fail(f"{ex.name}.delta", f"u^-1({ex.name}) has degree δ", ex.delta, f"computed {delta}")
            ex.delta = delta
            rep.record(f"{ex.name}.delta", delta)
            if ex.ideal.hilbert().degree == 1:
                rep.check(f"{ex.name}.preimage_quadric", f"u^-1({ex.name}) is a quadric surface", (2, 2),
                          (pre.dim, pre.degree))

    with rep.phase("E_inf"):
        E = e_infinity(con)
        HE = E.hilbert()
        rep.check("E_inf.is_surface", "E∞ is a surface", 2, HE.dim)
        degE = HE.degree
        rep.record("deg_E_inf", degE)

    with rep.phase("B2"):
        B1 = con.B1()
        mP = con.P_ideal()
        lines = [(ex, con.line_through_P(ex.image)) for ex in con.exceptional]
        residual = Bs.saturate(B1, rng)
        for _, Li in lines:
            residual = residual.saturate(Li, rng)
        residual = residual.saturate(mP, rng)
        if B2_route == "image":
            B2 = b2_by_image(con, rng)
            rep.check("B2.image_equals_residual", "B2 is the residual component of the base scheme",
                      True, B2.ideal.equals(residual),
                      note="image of C' versus base scheme minus B1, the lines B_i and P")
        else:
            B2 = Variety(residual, "B2")
        rep.artifact("B2", B2.ideal.to_text())
        H2 = B2.hilbert()
        rep.check("B2.is_curve", "B2 is a curve", 1, H2.dim)
        deg_B2, genus_B2 = H2.degree, H2.arithmetic_genus
        mult = multiplicity_at_point(B2, P_POINT, rng)
        TC = tangent_cone_ideal(B2.ideal, P_POINT)
        Ttc = Variety(TC.saturate_irrelevant(rng), "TC")
        # directions of the tangent lines: the cone over them, cut by a plane missing P
        sect = (Ttc.ideal + Ideal([T.gen(3)], T)).saturate_irrelevant(rng)
        tc_len = sect.zero_dim_length() if sect.hilbert().dim == 0 else None
        distinct = tc_len == mult and is_reduced_points(sect, rng)
        rep.check("B2.tangent_cone_degree", "the tangent cone of B2 at P has degree mult_P", mult, tc_len)
        rep.check("B2.tangents_distinct", "B2 has mult_P distinct tangent lines at P", True, distinct)

    with rep.phase("components"):
        P_on_B1 = all(not g.evaluate(P_POINT) for g in B1.gens)
        rep.check("P_not_on_B1", "P does not lie on B1", False, P_on_B1)
        ok_sub = Bs.issubset(B1) and Bs.issubset(B2.ideal) and Bs.issubset(mP.power(n))
        for ex, Li in lines:
            ok_sub = ok_sub and all(Li.power(ex.delta).contains(s) for s in f.forms)
        rep.check("base.in_candidates", "base scheme lies in B1, B2, B_i^δ_i and m_P^n", True, ok_sub)
        cands = [B1, B2.ideal] + [Li for _, Li in lines] + [mP]
        S = Bs
        for J in cands:
            S = S.saturate(J, rng)
        rep.check("base.no_other_components", "no components beyond B1, B2, the B_i and P", True, S.is_unit())
        needed = []
        for k in range(len(cands) - 1):
            S = Bs
            for j, J in enumerate(cands):
                if j != k:
                    S = S.saturate(J, rng)
            needed.append(not S.is_unit())
        rep.check("base.components_needed", "each of B1, B2, B_i is a component", True, all(needed))
        J1 = Bs.saturate(mP, rng)
        structure = (Bs.issubset(mP.power(n)) and not Bs.issubset(mP.power(n + 1))
                     and Bs.equals(J1.intersect(mP.power(n))))
        rep.check("base.point_structure", "at P the base scheme is the (n-1)-th neighbourhood of P", True,
                  structure, note="B ⊆ m_P^n, B ⊄ m_P^(n+1) and B = (B : m_P^∞) ∩ m_P^n")
        # whether P is an associated point of the saturated base ideal, and the colon by the curve part
        rep.record("base.P_associated", not Bs.equals(J1))
        rep.record("base.colon_by_curve_part_is_unit", Bs.colon(J1).saturate_irrelevant(rng).is_unit())
        if not lines:
            rep.check("base.one_dimensional_part", "one-dimensional part is B1 ∪ B2", True,
                      J1.equals(B1.intersect(B2.ideal)))

    with rep.phase("intersections"):
        b12 = _length(B1 + B2.ideal, rng)
        rep.check("B1.B2", "B1·B2 = n", n, b12)
        line_rows = []
        for ex, Li in lines:
            delta = ex.delta
            # secancy counts the points of B2 ∩ B_i away from the vertex P
            meet = Li + B2.ideal
            bi2 = _length(meet.saturate(mP, rng), rng)
            rep.record(f"{ex.name}.B2_total_length", _length(meet, rng))
            bi1 = _length(Li + B1, rng)
            rep.check(f"{ex.name}.B2", f"B2 is δ-secant to {ex.name} (away from P)", delta, bi2)
            rep.check(f"{ex.name}.neighbourhood", f"base scheme contains the (δ-1)-th neighbourhood of {ex.name}",
                      True, contains_neighborhood(Bs, Li, delta - 1))
            rep.record(f"{ex.name}.B1", bi1)
            line_rows.append({"name": ex.name, "delta": delta, "B2·Bi": bi2, "B1·Bi": bi1})
        # a random plane through P meets B2 in deg B2 points, mult_P of them at P
        pl = T.linear_form([fld.random(rng) for _ in range(3)] + [0])
        cut = B2.ideal + Ideal([pl], T)
        rep.check("bezout.plane_through_P", "a plane through P meets B2 in deg B2 points, mult_P at P",
                  [deg_B2, mult], [_length(cut, rng), _length(cut, rng) - _length(cut.saturate(mP, rng), rng)])

    with rep.phase("characteristic"):
        E1 = e_one(con)
        rep.check("E1.hyperplane_section", "E1 = g^{-1}(P) is the hyperplane section l1 = 0 of X", True,
                  E1.equals((inst.X.ideal + Ideal([con.l1], inst.ring)).saturate_irrelevant(rng)))
        # free intersection of two general members, counted away from P
        s1, _ = _random_member(con, rng)
        s2, _ = _random_member(con, rng)
        G = Ideal([s1, s2], T).saturate(Bs, rng)
        degE2 = e_two(con, rng).degree
        rep.record("deg_E2", degE2)
        rep.record("characteristic_curve.degree", G.degree())
        rep.check("characteristic.B2", "the characteristic curve meets B2 in deg E∞ points off P", degE,
                  _length((G + B2.ideal).saturate(mP, rng), rng))
        rep.check("characteristic.B1", "the characteristic curve meets B1 in deg E2 points", degE2,
                  _length(G + B1, rng))

    with rep.phase("cross_routes"):
        rep.check("cross.deg_B2", "deg B2 = deg E∞ - d + n", degE - d + n, deg_B2)
        rep.check("cross.mult_B2", "mult_P B2 = deg E∞ - d", degE - d, mult)
        rep.check("cross.deg_sigma", "deg Σ = n + 1", n + 1, f.degree)

    with rep.phase("monoid"):
        orders = [order_at_point(s, P_POINT) for s in f.forms if s]
        member, coeffs = _random_member(con, rng)
        rep.check("monoid.order", "every member of Σ has multiplicity n at P", n,
                  min(min(orders), order_at_point(member, P_POINT)))
        tc = tangent_cone_at_point(member, P_POINT)
        # the member is f^*(H); its tangent cone at P is the cone over h(H ∩ E1 ∩ X)
        R = inst.ring
        H = R.linear_form(coeffs)
        c1 = plane_curve_image(con, inst.section_curve(con.l1, H))
        cone = gamma_cone(con, c1)
        rep.check("monoid.tangent_cone", "tangent cone at P is the cone over h(C1)", True,
                  len(cone.gens) == 1 and _equal_up_to_scalar(tc, cone.gens[0]))
        Phi = gamma_cone(con, con.gamma)
        coneB2 = cone_from_point(B2, P_POINT)
        rep.check("split.cone_over_B2", "the cone over B2 from P is the cone over h(C)", True,
                  coneB2.ideal.equals(Phi))

    with rep.phase("split_surfaces"):
        # members through Λ: H = s l0 + t l1 pulls back to Φ times a plane through B1
        s, t = fld.random_nonzero(rng), fld.random_nonzero(rng)
        lam_coeffs = [fld.add(fld.mul(s, con.l0.coefficient(e)), fld.mul(t, con.l1.coefficient(e)))
                      for e in _unit_exps(R.nvars)]
        member = T.zero()
        for c, fi in zip(lam_coeffs, f.forms):
            member = member + fi.scale(c)
        phi = Phi.gens[0]
        try:
            W = divide_exact(member, phi)
            split = W.degree() == 1 and B1.contains(W)
        except ArithmeticError:
            split = False
        rep.check("split.member", "members through Λ split as Φ + a plane through B1", True, split)

    data = SigmaData(n, f.degree, d, degE, deg_B2, genus_B2, mult, b12, line_rows, distinct,
                     [str(c) for c in Bs.hilbert().hilbert_polynomial()],
                     {"base": Bs, "B2": B2.ideal, "lines": [Li for _, Li in lines], "Phi": Phi})
    rep.record("table", data.row())
    return data


def _unit_exps(n: int):
    return [tuple(int(j == i) for j in range(n)) for i in range(n)]

