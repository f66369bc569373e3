import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scrollmaps.algebra.field import GF, QQ
from scrollmaps.algebra.ring import PolyRing
from scrollmaps.geometry.linear import LinearSubspace, point_ideal
from scrollmaps.geometry.local import (
    LocalError, cone_from_point, contains_neighborhood, multiplicity_at_point, singular_locus,
    tangent_cone_at_point,
)
from scrollmaps.geometry.maps import (
    MapError, RationalMap, base_locus, compose, identity_map, image_closure, invert_birational,
    linear_projection, round_trip, segre_embed,
)
from scrollmaps.geometry.variety import Variety
from scrollmaps.ideals.ideal import Ideal

P = 32003
F = GF(P)


def p3(field=QQ):
    return PolyRing(4, field)


def cremona(field=QQ):
    R = PolyRing(3, field, names=("x", "y", "z"))
    x, y, z = R.gens
    return RationalMap([y * z, x * z, x * y], None, "cremona")


# --------------------------------------------------------------------------
# constructors and composition
# --------------------------------------------------------------------------

def test_segre_of_two_lines_is_a_quadric():
    m, S = segre_embed(1, 1, QQ)
    assert (S.dim, S.degree) == (2, 2)
    assert len(S.ideal.gens) == 1
    assert singular_locus(S).is_unit()


def test_segre_threefold():
    m, S = segre_embed(2, 1, QQ)
    assert S.ambient_dim == 5
    assert (S.dim, S.degree) == (3, 3)
    # the relations agree with the elimination image
    assert image_closure(m, method="kernel").ideal.equals(S.ideal)


def test_segre_of_coordinate_points():
    m, _ = segre_embed(2, 1, QQ)
    assert m.evaluate([1, 0, 0, 1, 0]) == [1, 0, 0, 0, 0, 0]


def test_segre_needs_positive_factors():
    with pytest.raises(ValueError):
        segre_embed(0, 1, QQ)


def test_projection_from_a_point_of_the_plane():
    R = PolyRing(3, QQ)
    pi = linear_projection(LinearSubspace.from_points(R, [[0, 0, 1]]))
    assert pi.target_nvars == 2
    # points on a line through the centre go to one point
    assert pi.evaluate([1, 2, 5]) == pi.evaluate([1, 2, -7])


def test_projection_from_a_line_of_p5():
    R = PolyRing(6, QQ)
    L = LinearSubspace.from_points(R, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])
    assert linear_projection(L).target_nvars == 4


def test_projection_from_everything_fails():
    R = PolyRing(3, QQ)
    with pytest.raises(MapError):
        linear_projection(LinearSubspace.from_forms(R, []))


def test_compose_with_identity():
    c = cremona()
    assert compose(identity_map(c.ring), c).forms == c.forms


def test_quadratic_cremona_is_an_involution():
    c = cremona()
    cc = compose(c, c)
    x, y, z = c.ring.gens
    assert cc.degree == 1
    assert round_trip(c, c)
    ratio = [cc.forms[i] * [x, y, z][0] - [x, y, z][i] * cc.forms[0] for i in range(3)]
    assert not any(ratio)


def test_composition_into_the_base_locus_is_an_error():
    R = PolyRing(2, QQ)
    s, t = R.gens
    c = cremona()
    # everything lands on a base point
    onto_point = RationalMap([s, R.zero(), R.zero()])
    with pytest.raises(MapError):
        compose(c, onto_point)


def test_mixed_degrees_are_rejected():
    R = PolyRing(2, QQ)
    s, t = R.gens
    with pytest.raises(MapError):
        RationalMap([s, t * t])


# --------------------------------------------------------------------------
# images, inverses, base loci
# --------------------------------------------------------------------------

def test_image_of_veronese_conic():
    R = PolyRing(2, QQ)
    s, t = R.gens
    img = image_closure(RationalMap([s * s, s * t, t * t]))
    y0, y1, y2 = img.ring.gens
    assert img.ideal.equals(Ideal([y0 * y2 - y1 ** 2]))


def test_inverse_of_identity():
    R = p3()
    inv = invert_birational(identity_map(R))
    assert inv.degree == 1 and round_trip(identity_map(R), inv)


def test_inverse_of_cremona_is_cremona():
    c = cremona()
    inv = invert_birational(c)
    assert inv.degree == 2
    x, y, z = inv.ring.gens
    a = inv.forms[0].lc()
    assert [f for f in inv.forms] == [g.scale(a) for g in (y * z, x * z, x * y)]


def test_base_locus_of_linear_isomorphism_is_empty():
    assert base_locus(identity_map(p3())).is_unit()


def test_base_locus_of_cremona_is_three_points():
    B = base_locus(cremona())
    assert B.hilbert().dim == 0 and B.zero_dim_length() == 3
    for pt in ([1, 0, 0], [0, 1, 0], [0, 0, 1]):
        assert all(not g.evaluate(pt) for g in B.gens)


@settings(max_examples=30)
@given(st.integers(0, 10 ** 9))
def test_linear_automorphisms_round_trip(seed):
    rng = random.Random(seed)
    R = p3(F)
    forms = [R.random_form(1, rng, P) for _ in range(4)]
    m = RationalMap(forms)
    try:
        inv = invert_birational(m, rng=rng, verify=None)
    except MapError:
        return  # singular draw
    assert round_trip(m, inv) and round_trip(inv, m)
    assert base_locus(m).is_unit()


@settings(max_examples=20)
@given(st.integers(0, 10 ** 9))
def test_conjugated_cremona_round_trip(seed):
    rng = random.Random(seed)
    c = cremona(F)
    R = c.ring
    A = RationalMap([R.random_form(1, rng, P) for _ in range(3)])
    try:
        Ainv = invert_birational(A, rng=rng, verify=None)
    except MapError:
        return
    T = compose(Ainv, compose(c, A))
    Tinv = invert_birational(T, rng=rng, verify=None)
    assert T.degree == Tinv.degree == 2
    assert round_trip(T, Tinv) and round_trip(Tinv, T)
    # the base locus of a birational map of P^2 has codimension 2
    assert base_locus(T).hilbert().dim <= 0


def test_image_of_a_composition():
    R = PolyRing(2, QQ)
    s, t = R.gens
    twisted = RationalMap([s ** 3, s * s * t, s * t * t, t ** 3])
    proj = linear_projection(LinearSubspace.from_points(p3(), [[0, 1, 0, 0]]))
    once = image_closure(compose(proj, twisted))
    curve = image_closure(twisted)
    twice = image_closure(proj, curve)
    assert once.ideal.equals(twice.ideal)
    assert (once.dim, once.degree) == (1, 3)


# --------------------------------------------------------------------------
# local invariants
# --------------------------------------------------------------------------

def test_multiplicity_of_a_line():
    R = p3()
    a, b, c, d = R.gens
    assert multiplicity_at_point(Ideal([c, d]), [1, 2, 0, 0]) == 1


def test_multiplicity_of_a_nodal_cubic():
    R = p3(F)
    x, y, z, w = R.gens
    # y^2 z = x^2 (x + z) in the plane w = 0, node at (0:0:1:0)
    I = Ideal([w, y * y * z - x * x * (x + z)])
    assert multiplicity_at_point(I, [0, 0, 1, 0]) == 2
    assert multiplicity_at_point(I, [-1, 0, 1, 0]) == 1


def test_multiplicity_errors():
    R = p3()
    a, b, c, d = R.gens
    with pytest.raises(LocalError):
        multiplicity_at_point(Ideal([c, d]), [0, 0, 1, 0])
    with pytest.raises(LocalError):
        multiplicity_at_point(Ideal([d]), [1, 0, 0, 0])


def test_smooth_quadric_has_no_singular_points():
    R = p3()
    a, b, c, d = R.gens
    assert singular_locus(Ideal([a * d - b * c])).is_unit()


def test_quadric_cone_is_singular_at_its_vertex():
    R = p3()
    a, b, c, d = R.gens
    S = singular_locus(Ideal([a * c - b * b]))
    assert S.equals(point_ideal(R, [0, 0, 0, 1]))


def test_cone_over_a_conic():
    R = p3()
    a, b, c, d = R.gens
    conic = Ideal([d, a * c - b * b])
    K = cone_from_point(conic, [1, 1, 1, 1])
    assert (K.dim, K.degree) == (2, 2)
    assert K.ideal.issubset(conic)


def test_contains_neighborhood_examples():
    R = PolyRing(3, QQ)
    x, y, z = R.gens
    m = Ideal([x, y])
    assert contains_neighborhood(Ideal([x * x, x * y, y * y]), m, 1)
    assert not contains_neighborhood(Ideal([x, y * y]), m, 1)
    assert contains_neighborhood(Ideal([x, y * y]), m, 0)


def test_tangent_cone_examples():
    R = p3()
    a, b, c, d = R.gens
    q = a * c - b * b
    assert tangent_cone_at_point(q, [0, 0, 0, 1]) == q
    t = tangent_cone_at_point(q, [1, 0, 0, 0])
    assert t.degree() == 1 and t == c.scale(t.lc())
    with pytest.raises(LocalError):
        tangent_cone_at_point(q, [1, 0, 1, 0])


# --------------------------------------------------------------------------
# properties
# --------------------------------------------------------------------------

@settings(max_examples=40)
@given(st.integers(0, 10 ** 9), st.integers(1, 4))
def test_bezout_on_lines(seed, e):
    rng = random.Random(seed)
    R = p3(F)
    f = R.random_form(e, rng, P)
    line = Ideal([R.random_form(1, rng, P), R.random_form(1, rng, P)])
    J = (line + Ideal([f])).saturate_irrelevant(rng)
    if J.is_unit() or J.hilbert().dim != 0:
        return  # degenerate draw
    assert J.zero_dim_length() == e


@settings(max_examples=15)
@given(st.integers(0, 10 ** 9))
def test_cone_contains_the_curve(seed):
    rng = random.Random(seed)
    R = p3(F)
    # a random twisted cubic and a random vertex
    S = PolyRing(2, F)
    s, t = S.gens
    cubics = [S.random_form(3, rng, P) for _ in range(4)]
    curve = image_closure(RationalMap(cubics), rng=rng)
    if curve.dim != 1:
        return
    vertex = [rng.randrange(P) for _ in range(4)]
    if any(not g.evaluate(vertex) for g in curve.ideal.gens[:1]):
        return
    K = cone_from_point(curve, vertex)
    assert all(curve.ideal.contains(g) for g in K.ideal.gens)
    assert K.dim == 2 and K.degree == curve.degree
