from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scrollmaps.algebra.field import GF, QQ, FieldError, random_prime
from scrollmaps.algebra.orders import GREVLEX, LEX, MonomialOrder, compare_monomials, elim
from scrollmaps.algebra.polymatrix import det, jacobian
from scrollmaps.algebra.ring import PolyRing, RingError

P = 32003


# --------------------------------------------------------------------------
# scalars
# --------------------------------------------------------------------------

def test_prime_field_additive_inverse():
    F = GF(101)
    assert F.add(50, 51) == 0


def test_rational_addition():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_inverse_in_f7_matches_scan():
    F = GF(7)
    scan = next(b for b in range(1, 7) if 3 * b % 7 == 1)
    assert F.inv(3) == scan == 5


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        GF(7).inv(0)
    with pytest.raises(ZeroDivisionError):
        QQ.div(1, 0)


def test_composite_modulus_rejected():
    with pytest.raises(FieldError):
        GF(10)


def test_rationals_stay_reduced():
    a = QQ("-6/4")
    assert a == Fraction(-3, 2) and a.denominator > 0


def test_random_prime_in_range():
    import random

    p = random_prime(random.Random(1), avoid=(P,))
    assert p != P and 10007 <= p


# --------------------------------------------------------------------------
# monomial orders
# --------------------------------------------------------------------------

def test_grevlex_degree_tie():
    assert compare_monomials((2, 0), (1, 1), GREVLEX) == 1


def test_lex_ignores_degree():
    assert compare_monomials((0, 3), (1, 0), LEX) == -1


def test_order_reflexive():
    for order in (GREVLEX, LEX, elim(1)):
        assert compare_monomials((1, 2, 3), (1, 2, 3), order) == 0


def test_order_length_mismatch():
    with pytest.raises(ValueError):
        compare_monomials((1, 2), (1, 2, 3), GREVLEX)


def test_unknown_order_rejected():
    with pytest.raises(ValueError):
        MonomialOrder("revlex")


def test_elimination_order_prefers_first_block():
    # x0 beats any power of x1, x2 in elim(1)
    assert compare_monomials((1, 0, 0), (0, 5, 5), elim(1)) == 1
    assert compare_monomials((1, 0, 0), (0, 5, 5), GREVLEX) == -1


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

R2 = PolyRing(2, QQ, names=("x", "y"))


def test_difference_of_squares():
    x, y = R2.gens
    assert (x + y) * (x - y) == x * x - y * y


def test_additive_inverse():
    x, y = R2.gens
    f = x * x + y.scale(3)
    assert not (f + f.scale(-1))


def test_binomial_cube():
    x, _ = R2.gens
    f = (x + 1) ** 3
    assert [f.coefficient((k, 0)) for k in range(3, -1, -1)] == [1, 3, 3, 1]


def test_content_and_primitive_part():
    x, y = R2.gens
    f = x.scale(Fraction(4, 3)) + y.scale(2)
    c, g = f.content_primitive()
    assert g.scale(c) == f
    assert g == x.scale(2) + y.scale(3)


def test_ring_mismatch_is_an_error():
    S = PolyRing(3, QQ)
    with pytest.raises(RingError):
        R2.gen(0) + S.gen(0)


def test_substitute_monomial():
    S = PolyRing(2, QQ, names=("u", "v"))
    u, v = S.gens
    x, y = R2.gens
    assert (x * y).substitute([u * u, v * v]) == u * u * v * v


def test_substitute_identity():
    x, y = R2.gens
    f = x ** 3 + x * y.scale(5) + 7
    assert f.substitute(R2.gens) == f


def test_substitute_sum_of_squares():
    S = PolyRing(2, QQ, names=("s", "t"))
    s, t = S.gens
    x, y = R2.gens
    assert (x * x + y * y).substitute([s + t, s - t]) == (s * s + t * t).scale(2)


def test_substitute_arity_mismatch():
    with pytest.raises(ValueError):
        R2.gen(0).substitute([R2.gen(0)])


def test_jacobian_small():
    x, y = R2.gens
    J = jacobian([x * x, x * y])
    assert J == [[x.scale(2), R2.zero()], [y, x]]


def test_jacobian_of_constant():
    assert jacobian([R2.constant(5)]) == [[R2.zero(), R2.zero()]]


def test_jacobian_determinant_of_quadratic_cremona():
    R = PolyRing(3, QQ)
    x, y, z = R.gens
    assert det(jacobian([y * z, x * z, x * y]), R) == (x * y * z).scale(2)


def test_homogeneity():
    x, y = R2.gens
    assert (x * x + x * y).homogeneity() == 2
    assert (x + 1).homogeneity() is None


def test_bihomogeneity_of_segre_form():
    R = PolyRing(4, QQ)
    x0, x1, y0, y1 = R.gens
    assert (x0 * y1 - x1 * y0).homogeneity([[0, 1], [2, 3]]) == (1, 1)


def test_text_round_trip():
    R = PolyRing(3, QQ)
    f = R.parse("x0^2*x1 - 3/4*x2^3 + x0*x1*x2")
    assert R.parse(str(f)) == f


# --------------------------------------------------------------------------
# properties: 4 suites x 2500 cases
# --------------------------------------------------------------------------

R3 = PolyRing(3, GF(P))
SUITE = settings(max_examples=2500, deadline=None, database=None)

# One byte string feeds a whole example: drawing many small values costs far
# more than the polynomial arithmetic under test.  Each term takes three
# bytes, a monomial index (base-``base`` exponent digits) and a coefficient.


def _terms(data: bytes, base: int) -> list:
    out = []
    for i in range(0, len(data) - 2, 3):
        k = data[i] % base ** 3
        out.append(((k % base, k // base % base, k // base ** 2), (data[i + 1] << 8 | data[i + 2]) % P))
    return out


def _poly(data: bytes, base: int = 4):
    d = {}
    for e, c in _terms(data, base):
        d[e] = (d.get(e, 0) + c) % P
    return R3.from_dict(d)


def _split(data: bytes, k: int, size: int) -> list[bytes]:
    # the first byte of each chunk picks its number of terms
    out = []
    for i in range(k):
        chunk = data[i * (3 * size + 1):(i + 1) * (3 * size + 1)]
        n = chunk[0] % (size + 1) if chunk else 0
        out.append(chunk[1:1 + 3 * n])
    return out


def blob(k: int, size: int):
    return st.binary(max_size=k * (3 * size + 1))


@SUITE
@given(blob(3, 5))
def test_ring_axioms(data):
    f, g, h = (_poly(c) for c in _split(data, 3, 5))
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f and f * g == g * f
    assert not (f - f)


@SUITE
@given(blob(1, 6), st.randoms(use_true_random=False))
def test_canonical_form_independent_of_association(data, rnd):
    parts = [R3.from_dict({e: c}) for e, c in _terms(_split(data, 1, 6)[0], 4) if c]
    a = sum(parts, R3.zero())
    rnd.shuffle(parts)
    b = R3.zero()
    for p in reversed(parts):
        b = p + b
    assert a == b and a.sorted_terms() == b.sorted_terms()


LINEAR = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)]


@SUITE
@given(blob(5, 3))
def test_substitution_is_multiplicative(data):
    chunks = _split(data, 5, 3)
    f, g = _poly(chunks[0], 3), _poly(chunks[1], 3)
    # near-linear images keep the substituted degrees small
    images = [R3.from_dict({LINEAR[e[0] % 5]: c for e, c in _terms(ch, 3)}) for ch in chunks[2:]]
    assert (f * g).substitute(images) == f.substitute(images) * g.substitute(images)


exps = st.tuples(*[st.integers(0, 6)] * 3)


@SUITE
@given(exps, exps, exps, st.sampled_from([GREVLEX, LEX, elim(1), elim(2)]))
def test_orders_are_multiplicative(m, a, b, order):
    c = compare_monomials(a, b, order)
    ma = tuple(x + y for x, y in zip(m, a))
    mb = tuple(x + y for x, y in zip(m, b))
    assert compare_monomials(ma, mb, order) == c
    assert (c == 0) == (a == b)


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 2), st.integers(-50, 50), max_size=4),
       st.dictionaries(st.tuples(*[st.integers(0, 3)] * 2), st.integers(-50, 50), max_size=4))
def test_reduction_mod_p_commutes_with_products(a, b):
    Rq = PolyRing(2, QQ)
    Rp = PolyRing(2, GF(P))
    fq, gq = Rq.from_dict(a), Rq.from_dict(b)
    prod = (fq * gq).to_dict()
    assert Rp.from_dict(prod) == Rp.from_dict(a) * Rp.from_dict(b)
