"""One test per acceptance criterion; the terminal summary prints a PASS/FAIL line for each."""

import time

import pytest

from conftest import ACCEPTANCE, _run

BUDGET = {1: 10, 2: 300, 3: 1800, 6: 1800, 7: 3600, 8: 3600}


def record(k, ok, text):
    ACCEPTANCE[k] = (bool(ok), text)
    assert ok, text


def status(rep, claim):
    return rep.status_of(claim) == "pass"


def computed(rep, claim):
    e = rep.entry(claim)
    return None if e is None else e.computed


def within(rep, k):
    return rep.timings.get("total", 0) <= BUDGET[k]


def test_criterion_1_segre_projection(segre_projection_report):
    rep = segre_projection_report
    ok = (rep.ok and status(rep, "projection.birational") and computed(rep, "inverse.degree") == 2
          and status(rep, "base_locus.equals_B_union_P") and status(rep, "P_not_on_B")
          and status(rep, "plane.contracted_to_L") and within(rep, 1))
    record(1, ok, f"projection from a line over Q: inverse by quadrics, base locus line + point, "
                  f"plane contracted ({rep.timings.get('total', 0):.1f}s)")


def test_criterion_2_bordiga_construction(bordiga_build):
    rep = bordiga_build
    ok = (rep.ok and computed(rep, "X.degree") == 6 and computed(rep, "X.dim") == 3
          and status(rep, "C.smooth") and computed(rep, "C.genus") == 3 and within(rep, 2))
    record(2, ok, f"Bordiga X: deg 6, dim 3, smooth section of genus 3 ({rep.timings.get('total', 0):.1f}s)")


def test_criterion_3_bordiga_table(bordiga_table):
    rep = bordiga_table
    row = rep.values.get("table_row", {})
    ok = (rep.ok and row.get("deg Σ") == 5 and row.get("deg B2") == 14 and row.get("p_a(B2)") == 23
          and row.get("mult_P B2") == 10 and row.get("B1·B2") == 4
          and status(rep, "B2.tangents_distinct") and status(rep, "P_not_on_B1")
          and status(rep, "base.no_other_components") and status(rep, "base.components_needed")
          and status(rep, "base.point_structure") and within(rep, 3))
    record(3, ok, f"Bordiga row: deg Σ 5, B2 deg 14 p_a 23 mult 10, B1·B2 4, base = B1 ∪ B2 + point structure "
                  f"({rep.timings.get('total', 0):.1f}s)")


def _cross(rep):
    claims = [c for c in rep.checks if c.claim.startswith("cross.") or c.claim == "B1.B2"
              or c.claim.endswith(".B2") or c.claim.endswith(".neighbourhood")]
    return claims, all(c.status == "pass" for c in claims)


def test_criterion_4_cross_routes(bordiga_table, palatini_default, palatini_table):
    total = 0
    ok = True
    for rep in (bordiga_table, palatini_default, palatini_table):
        claims, good = _cross(rep)
        names = {c.claim for c in claims}
        ok = ok and good and {"cross.deg_B2", "cross.mult_B2", "cross.deg_sigma", "B1.B2"} <= names
        ok = ok and computed(rep, "cross.deg_sigma") == rep.values["n"] + 1
        ok = ok and computed(rep, "B1.B2") == rep.values["n"]
        total += len(claims)
    record(4, ok, f"cross-route formulas on Bordiga and both Palatini modes ({total} checks)")


def test_criterion_5_bordiga_e_infinity(bordiga_table):
    rep = bordiga_table
    ok = rep.values.get("deg_E_inf") == 16 and computed(rep, "table.deg E∞") == 16
    record(5, ok, f"deg E∞ from its ideal on X = {rep.values.get('deg_E_inf')}")


def test_criterion_6_palatini_construction(palatini_build):
    rep = palatini_build
    ok = (rep.ok and computed(rep, "X.degree") == 7 and computed(rep, "X.dim") == 3
          and computed(rep, "V.cubic") == 3 and status(rep, "V.smooth") and status(rep, "fibres.lines")
          and status(rep, "C.smooth") and computed(rep, "C.genus") == 4 and within(rep, 6))
    record(6, ok, f"Palatini X: deg 7, dim 3, smooth Pfaffian cubic, line fibres, section genus 4 "
                  f"({rep.timings.get('total', 0):.1f}s)")


def test_criterion_7_palatini_default_mode(palatini_default, palatini_table):
    rep = palatini_default
    claims, good = _cross(rep)
    lines = [name for name, dh in rep.values["v.exceptional_curves"] if tuple(dh) == (1, 1)]
    quadrics = all(computed(rep, f"{n}.preimage_quadric") == [2, 2] and rep.values.get(f"{n}.delta") == 2
                   for n in lines)
    ok = rep.ok and good and bool(lines) and quadrics and within(rep, 7)
    stretch = "stretch row and h0(I_B(7)) = 6 " + ("pass" if palatini_table.ok else "FAIL")
    record(7, ok, f"Palatini two-skew-lines: n = {rep.values.get('n')}, δ = 2 on {len(lines)} lines; {stretch} "
                  f"({rep.timings.get('total', 0):.1f}s)")


def test_criterion_8_cremona(cremona_general, cremona_special):
    g, s = cremona_general, cremona_special
    ok = (g.ok and s.ok and computed(g, "T.type") == [7, 5] and computed(g, "gLp.twisted_cubic") == [1, 3, 0]
          and computed(s, "T.type") == [3, 3] and within(g, 8) and within(s, 8))
    record(8, ok, "Cremona of type (7,5) with g(L') a twisted cubic; special case (3,3)")


ROUND_TRIPS = {
    "segre_projection_report": ["projection.birational", "projection.round_trip_target"],
    "bordiga_table": ["g.birational"],
    "palatini_default": ["g.birational", "v.birational"],
    "palatini_table": ["g.birational", "v.birational"],
    "cremona_general": ["Lp.projection_birational", "T.round_trip"],
    "cremona_special": ["Lp.projection_birational", "T.round_trip"],
}


def test_criterion_9_property_suites(request):
    import test_algebra
    import test_ideals

    notes = []
    t0 = time.perf_counter()
    for fn in (test_algebra.test_ring_axioms, test_algebra.test_canonical_form_independent_of_association,
               test_algebra.test_substitution_is_multiplicative, test_algebra.test_orders_are_multiplicative):
        fn()
    kernel_time = time.perf_counter() - t0
    cases = 4 * test_algebra.SUITE.max_examples
    ok = cases >= 10 ** 4 and kernel_time < 60
    notes.append(f"kernel {cases} cases in {kernel_time:.0f}s")

    t0 = time.perf_counter()
    test_ideals.test_membership_agrees_with_macaulay_oracle()
    oracle_time = time.perf_counter() - t0
    ok = ok and oracle_time < 300
    notes.append(f"Macaulay oracle in {oracle_time:.0f}s")

    test_ideals.test_saturation_is_idempotent()
    for fixture, claims in ROUND_TRIPS.items():
        rep = request.getfixturevalue(fixture)
        ok = ok and all(status(rep, c) for c in claims)
    notes.append("round trips on all pipeline maps")

    agreed = 0
    for kw in (dict(pipeline="table", variety="bordiga"), dict(pipeline="table", variety="palatini"),
               dict(pipeline="cremona")):
        rep = _run(second_prime=True, **kw)
        good = status(rep, "two_prime.integers_agree")
        ok = ok and good
        agreed += good
    notes.append(f"two primes agree on {agreed}/3 pipelines")
    record(9, ok, "; ".join(notes))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
