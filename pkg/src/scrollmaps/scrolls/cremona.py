"""Cremona transformations of P^3 through a Bordiga scroll.

A line ``L'`` on X that ``u`` maps to a conic gives a second birational
map: the projection ``π_{L'}: X -> P^3``, with inverse ``f'``.  Then
``T = g ∘ f'`` is a Cremona transformation and ``T^{-1} = π_{L'} ∘ f``.

``L'`` is planted: the matrix is chosen so that along ``x = e0 + t e1`` the
kernel of ``M(x)`` is ``(1, t, t^2)``, then the coordinates of P^5 are
changed at random.
"""

from __future__ import annotations

import logging

from ..algebra.linalg import inverse, random_invertible
from ..algebra.ring import PolyRing
from ..config import RunConfig
from ..geometry.linear import LinearSubspace
from ..geometry.maps import MapError, RationalMap, compose, image_closure, invert_birational, round_trip
from ..geometry.sampling import random_point
from ..report import VerificationReport
from .construction import compute_sigma, construct_g, curve_checks
from .instances import GenericityError, ScrollInstance, build_bordiga

log = logging.getLogger(__name__)


def _plant_conic_line(store: dict):
    def adjust(coeffs, rng):
        m = coeffs
        fld = store["field"]
        for i in range(4):
            # (M0 + t M1)(1, t, t^2) = 0 coefficientwise in t
            m[i][0][0] = fld.zero
            m[i][1][0] = fld.neg(m[i][0][1])
            m[i][2][0] = fld.neg(m[i][1][1])
            m[i][2][1] = fld.zero
        G = random_invertible(6, fld, rng)
        new = [[[fld(sum(fld.mul(e[l], G[l][k]) for l in range(6))) for k in range(6)] for e in row] for row in m]
        Ginv = inverse(G, fld)
        # M'(x) = M(G x), so L' = G^{-1} <e0, e1>
        store["line"] = [[Ginv[k][0] for k in range(6)], [Ginv[k][1] for k in range(6)]]
        return new
    return adjust


def build_bordiga_with_conic_line(field, seed: int = 1, retries: int = 20) -> ScrollInstance:
    store = {"field": field}
    inst = build_bordiga(field, seed, retries, adjust=_plant_conic_line(store))
    inst.data["conic_line"] = [[int(c) if field.p else str(c) for c in pt] for pt in store["line"]]
    inst.data["_line"] = store["line"]
    return inst


def _line_param(inst: ScrollInstance, line) -> tuple[PolyRing, list]:
    P1 = PolyRing(2, inst.field, names=("s", "t"))
    return P1, [P1.linear_form([line[0][k], line[1][k]]) for k in range(inst.ring.nvars)]


def _restrict_map(m: RationalMap, par) -> RationalMap:
    return RationalMap([f.substitute(par) for f in m.forms], None, m.name + "|L'").reduced()


def _points_identity(first: RationalMap, second: RationalMap, fld, rng, samples: int = 10) -> bool:
    """``second ∘ first`` fixes random points of P^3."""
    done = 0
    for _ in range(samples * 5):
        y = random_point(first.source_nvars, fld, rng)
        z = first.evaluate(y)
        if not any(z):
            continue
        w = second.evaluate(z)
        if not any(w):
            continue
        if any(fld.sub(fld.mul(y[i], w[j]), fld.mul(y[j], w[i])) for i in range(4) for j in range(i + 1, 4)):
            return False
        done += 1
        if done == samples:
            return True
    return done > 0


def run_cremona(cfg: RunConfig, special: bool = False) -> VerificationReport:
    rep = VerificationReport("cremona" + ("-special" if special else ""))
    rep.config = cfg.echo()
    fld = cfg.field
    rng = cfg.rng(41)
    with rep.phase("instance"):
        inst = build_bordiga_with_conic_line(fld, cfg.seed, cfg.retries)
        line = inst.data.pop("_line")
        P1, par = _line_param(inst, line)
        rep.check("Lp.on_X", "the planted line lies on X", True,
                  all(not g.substitute(par) for g in inst.X.ideal.gens))
        uL = _restrict_map(inst.u, par)
        rep.check("Lp.u_conic", "u maps L' to a conic", 2, uL.degree)
    with rep.phase("projection"):
        centre = LinearSubspace.from_points(inst.ring, line)
        pi = RationalMap(centre.forms, inst.X, "pi_L'")
        try:
            fp = invert_birational(pi, inst.X, None, method="linear", rng=rng, verify=None, max_degree=8)
        except MapError as exc:
            rep.skip("cremona", "projection from L' is birational", True, f"skipped (stretch): {exc}")
            return rep
        rep.check("Lp.projection_birational", "projection from L' is birational onto P^3", True,
                  round_trip(pi, fp, "symbolic"))
        rep.check("Lp.inverse_degree", "the inverse of the projection is given by quintics", 5, fp.degree)
        T3 = fp.ring
    with rep.phase("construct"):
        con = None
        for attempt in range(cfg.retries):
            r = cfg.rng(300 + attempt)
            if special:
                # Λ contains L': two random forms vanishing on it
                l0, l1 = (sum((f.scale(fld.random(r)) for f in centre.forms), inst.ring.zero()) for _ in range(2))
            else:
                l0, l1 = (inst.ring.linear_form([fld.random(r) for _ in range(6)]) for _ in range(2))
                restr = [[l.evaluate(pt) for pt in line] for l in (l0, l1)]
                if not fld.sub(fld.mul(restr[0][0], restr[1][1]), fld.mul(restr[0][1], restr[1][0])):
                    continue
                cc = curve_checks(inst, l0, l1, r)
                if not (cc["C_smooth"] and cc["C_avoids_sing_X"]):
                    continue
            try:
                con = construct_g(inst, r, check_curve=False, lam_forms=(l0, l1))
            except GenericityError:
                continue
            rep.record("lambda_attempts", attempt + 1)
            break
        if con is None:
            rep.skip("cremona", "a valid Λ", True, "skipped (stretch): no Λ found")
            return rep
        rep.record("n", con.n)
        f = compute_sigma(con, rng)
    with rep.phase("compose"):
        fpX = RationalMap([c.to_ring(T3) for c in fp.forms], None, "f'")
        T = compose(con.g, fpX)
        Tinv = compose(pi, RationalMap([c.to_ring(con.target) for c in f.forms], None, "f"))
        expected = (3, 3) if special else (7, 5)
        rep.check("T.type", "T is of type " + str(expected), list(expected), [T.degree, Tinv.degree])
        Tinv_t = RationalMap([c.to_ring(T.ring) for c in Tinv.forms], None, "T^-1")
        rep.check("T.round_trip", "T^{-1} ∘ T and T ∘ T^{-1} fix random points", True,
                  _points_identity(T, Tinv_t, fld, rng) and _points_identity(Tinv_t, T, fld, rng))
        rep.artifact("T", T.to_text())
        rep.artifact("T_inverse", Tinv.to_text())
    if special:
        rep.skip("gLp.twisted_cubic", "g(L') is a twisted cubic", [3, 0], "L' lies in the fundamental locus of g")
        return rep
    with rep.phase("image_of_Lp"):
        gL = _restrict_map(con.g, par)
        img = image_closure(gL, None, method="graph", rng=rng)
        H = img.hilbert()
        rep.check("gLp.twisted_cubic", "g(L') is a skew cubic curve (degree, p_a)", [1, 3, 0],
                  [H.dim, H.degree, H.arithmetic_genus])
        rep.check("gLp.degree_of_parametrization", "g restricted to L' is given by cubics", 3, gL.degree)
    return rep
