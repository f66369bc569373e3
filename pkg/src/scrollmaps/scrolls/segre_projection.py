"""Projection of the Segre threefold P^2 x P^1 in P^5 from a line on it.

Coordinates on P^5 are ``z_{2i+j} = a_i b_j``.  The plane ``F1 = P^2 x (1:0)``
and the quadric ``F2 = {a_2 = 0} x P^1`` meet in the line
``L = {z1 = z3 = z5 = z4 = 0}``; projecting from ``L`` gives
``(a, b) -> (a0 b1, a1 b1, a2 b1, a2 b0)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..algebra.field import Field
from ..algebra.ring import PolyRing
from ..geometry.linear import LinearSubspace
from ..geometry.maps import (RationalMap, base_locus, image_closure, invert_birational, proportional_to_identity,
                             round_trip, segre_embed)
from ..geometry.variety import Variety
from ..ideals.ideal import Ideal
from ..report import VerificationReport

# indices into the P^5 coordinates z_{2i+j}
PROJECTION_COORDS = (1, 3, 5, 4)


@dataclass
class SegreProjection:
    X: Variety
    F1: Variety
    F2: Variety
    L: LinearSubspace
    pi: RationalMap
    P: list
    B: Ideal


def segre_threefold_projection(field: Field) -> SegreProjection:
    _, X = segre_embed(2, 1, field)
    R = X.ring
    z = R.gens
    F1 = Variety(X.ideal + Ideal([z[1], z[3], z[5]], R), "F1")
    F2 = Variety(X.ideal + Ideal([z[4], z[5]], R), "F2")
    L = LinearSubspace.from_forms(R, [z[i] for i in PROJECTION_COORDS])
    pi = RationalMap([z[i] for i in PROJECTION_COORDS], X, "pi_L")
    T = PolyRing(4, field)
    y = T.gens
    return SegreProjection(X, F1, F2, L, pi, [0, 0, 0, 1], Ideal([y[2], y[3]], T))


def verify_segre_projection(field: Field, rng: random.Random | None = None) -> VerificationReport:
    """Birationality, exceptional loci and inverse of the projection from ``L``."""
    rng = rng or random.Random(0)
    rep = VerificationReport("prop11")
    rep.config["field"] = "Q" if field.p is None else f"GF({field.p})"
    S = segre_threefold_projection(field)
    X, pi = S.X, S.pi
    with rep.phase("segre"):
        rep.check("segre.dim", "the Segre threefold has dimension 3", 3, X.dim)
        rep.check("segre.degree", "the Segre threefold has degree 3", 3, X.degree)
        rep.check("L.is_line", "the centre F1 ∩ F2 is a line", 1, S.L.dim)
        inter = Variety.from_ideal(S.F1.ideal + S.F2.ideal)
        rep.check("L.equals_F1_cap_F2", "the centre is F1 ∩ F2", True, inter.ideal.equals(S.L.ideal()))
    with rep.phase("inverse"):
        inv = invert_birational(pi, X, None, method="linear", rng=rng, verify=None)
        rt = round_trip(pi, inv, "symbolic")
        rep.check("projection.birational", "projection from L is birational onto P^3", True, rt,
                  note="inverse found and inverse∘projection ∝ identity on X")
        # the other composite: pi ∘ inverse on P^3
        back = [f.substitute(inv.forms) for f in pi.forms]
        rep.check("projection.round_trip_target", "projection∘inverse ∝ identity on P^3", True,
                  proportional_to_identity(back, None))
        rep.check("inverse.degree", "the inverse is given by quadrics", 2, inv.degree)
        rep.artifact("inverse", inv.to_text())
    T = inv.ring
    with rep.phase("exceptional"):
        imgF1 = image_closure(pi, S.F1, rng=rng)
        rep.check("F1.image_is_point", "F1 is contracted to a point P", (0, 1),
                  (imgF1.dim, imgF1.degree))
        P_ideal = LinearSubspace.from_points(T, [S.P]).ideal()
        rep.check("F1.image_is_P", "the contracted point is P", True, imgF1.ideal.equals(P_ideal))
        imgF2 = image_closure(pi, S.F2, rng=rng)
        rep.check("F2.image_is_line", "F2 is mapped onto a line B", (1, 1), (imgF2.dim, imgF2.degree))
        rep.check("F2.image_is_B", "the image line is B", True, imgF2.ideal.equals(S.B))
        rep.check("P_not_on_B", "P does not lie on B", False, all(not g.evaluate(S.P) for g in S.B.gens))
    with rep.phase("base_locus"):
        bl = base_locus(inv, None, rng)
        expected = S.B.intersect(P_ideal)
        rep.check("base_locus.equals_B_union_P", "base locus of the quadrics is B ∪ P", True, bl.equals(expected))
        h = bl.hilbert()
        rep.check("base_locus.hilbert", "B ∪ P: Hilbert polynomial t + 2", ["2", "1"],
                  [str(c) for c in h.hilbert_polynomial()])
    with rep.phase("contracted_plane"):
        span = LinearSubspace.from_points(T, [[1, 0, 0, 0], [0, 1, 0, 0], S.P])
        img = image_closure(inv, Variety(span.ideal(), "plane"), rng=rng)
        rep.check("plane.contracted_to_L", "the plane <B ∪ P> is contracted onto L", True,
                  img.dim == 1 and img.ideal.equals(S.L.ideal()))
    return rep
