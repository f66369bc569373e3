import random

import pytest

from scrollmaps.algebra.field import GF
from scrollmaps.algebra.linalg import rref
from scrollmaps.algebra.ring import PolyRing
from scrollmaps.geometry.local import is_smooth
from scrollmaps.geometry.sampling import restrict_to_line
from scrollmaps.ideals.ideal import Ideal
from scrollmaps.scrolls.instances import palatini_matrices, pfaffian_cubic
from scrollmaps.scrolls.palatini import lines_on_surface, rational_transversals
from scrollmaps.scrolls.pipelines import BORDIGA_ROW, PALATINI_ROW, integer_values


def passed(rep, *claims):
    for c in claims:
        assert rep.status_of(c) == "pass", (c, rep.entry(c))


def cross_route_claims(rep):
    return [c.claim for c in rep.checks
            if c.claim.startswith("cross.") or c.claim == "B1.B2"
            or c.claim.endswith(".B2") or c.claim.endswith(".neighbourhood")]


# --------------------------------------------------------------------------
# projection of the Segre threefold
# --------------------------------------------------------------------------

def test_segre_projection(segre_projection_report):
    assert segre_projection_report.ok
    passed(segre_projection_report, "projection.birational", "inverse.degree", "base_locus.equals_B_union_P",
           "P_not_on_B", "plane.contracted_to_L")
    assert segre_projection_report.entry("inverse.degree").computed == 2


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------

def test_bordiga_build(bordiga_build):
    assert bordiga_build.ok
    assert bordiga_build.entry("X.degree").computed == 6
    assert bordiga_build.entry("X.dim").computed == 3
    assert bordiga_build.entry("C.genus").computed == 3
    passed(bordiga_build, "C.smooth", "fibres.lines")


def test_palatini_build(palatini_build):
    assert palatini_build.ok
    assert palatini_build.entry("X.degree").computed == 7
    assert palatini_build.entry("C.genus").computed == 4
    assert palatini_build.entry("V.cubic").computed == 3
    passed(palatini_build, "V.smooth", "fibres.lines", "C.smooth", "u.into_V")


def test_palatini_matrices_are_skew(palatini_build):
    p = 32003
    for A in palatini_build.values["matrix_data"]:
        assert all((A[i][j] + A[j][i]) % p == 0 for i in range(6) for j in range(6))


# --------------------------------------------------------------------------
# the web of monoids and its base locus
# --------------------------------------------------------------------------

def test_bordiga_row(bordiga_table):
    assert bordiga_table.ok
    assert bordiga_table.values["table_row"] == BORDIGA_ROW
    passed(bordiga_table, "base.point_structure", "base.no_other_components", "B2.tangents_distinct",
           "sigma.minors_route", "characteristic.B2", "characteristic.B1", "bezout.plane_through_P")


def test_bordiga_cross_routes(bordiga_table):
    claims = cross_route_claims(bordiga_table)
    assert {"cross.deg_B2", "cross.mult_B2", "cross.deg_sigma", "B1.B2"} <= set(claims)
    passed(bordiga_table, *claims)


def test_palatini_default_mode(palatini_default):
    rep = palatini_default
    assert rep.ok
    n = rep.values["n"]
    assert rep.entry("cross.deg_sigma").computed == n + 1
    assert rep.entry("B1.B2").computed == n
    passed(rep, *cross_route_claims(rep))
    curves = dict((name, tuple(dh)) for name, dh in rep.values["v.exceptional_curves"])
    assert len(curves) == 7
    lines = [name for name, dh in curves.items() if dh == (1, 1)]
    # every exceptional line has a quadric preimage and is doubled
    for name in lines:
        assert rep.entry(f"{name}.preimage_quadric").computed == [2, 2]
        assert rep.values[f"{name}.delta"] == 2
        passed(rep, f"{name}.B2", f"{name}.neighbourhood")


def test_palatini_row(palatini_table):
    rep = palatini_table
    assert rep.ok
    assert {k: rep.values["table_row"][k] for k in PALATINI_ROW} == PALATINI_ROW
    passed(rep, "Psi.degree", "Psi.contains_doubled_lines", "h0_base_7", "v.six_lines", "v.disjoint")
    assert rep.values["p_a(base)"] == 97


def test_branch_smoothness_is_reported_unchecked(bordiga_table):
    assert bordiga_table.status_of("B2.branches_smooth") == "skipped"


def test_integer_values_skip_attempt_counters(palatini_build):
    vals = integer_values(palatini_build)
    assert "instance_attempt" not in vals and "lambda_attempts" not in vals
    assert vals["X.degree"] == 7


# --------------------------------------------------------------------------
# Cremona transformations
# --------------------------------------------------------------------------

def test_cremona_general(cremona_general):
    assert cremona_general.ok
    assert cremona_general.entry("T.type").computed == [7, 5]
    assert cremona_general.entry("gLp.twisted_cubic").computed == [1, 3, 0]
    passed(cremona_general, "T.round_trip", "Lp.projection_birational")


def test_cremona_special(cremona_special):
    assert cremona_special.ok
    assert cremona_special.entry("T.type").computed == [3, 3]
    passed(cremona_special, "T.round_trip")


# --------------------------------------------------------------------------
# lines on the Pfaffian cubic over a small field
# --------------------------------------------------------------------------

def _line_key(line, fld):
    R, _ = rref([list(line[0]), list(line[1])], fld)
    return tuple(tuple(int(x) for x in row) for row in R)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_exhaustive_lines_contain_the_transversals(seed):
    fld = GF(11)
    rng = random.Random(seed)
    for _ in range(50):
        As = palatini_matrices(fld, rng, plant_lines=True)
        F = pfaffian_cubic(As, PolyRing(4, fld))
        if F.degree() == 3 and is_smooth(Ideal([F]), [F]):
            break
    else:
        pytest.skip("no smooth cubic drawn")
    lines = lines_on_surface(F)
    assert len(lines) <= 27
    assert all(not any(restrict_to_line(F, a, b)) for a, b in lines)
    keys = {_line_key(l, fld) for l in lines}
    # the planted lines
    assert _line_key(([1, 0, 0, 0], [0, 1, 0, 0]), fld) in keys
    assert _line_key(([0, 0, 1, 0], [0, 0, 0, 1]), fld) in keys
    trans = rational_transversals(F, rng)
    if trans is not None:
        assert {_line_key(t, fld) for t in trans} <= keys
