import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fano_enriques.ambient import scroll
from fano_enriques.germs import (
    CDV,
    CREPANT_WEIGHTS,
    NOT_CDV,
    SMOOTH,
    Germ,
    Poly,
    canonical_verdict,
    cdv_verdict,
    local_cover_germ,
    point_evidence,
    scan_exceptional_divisor,
    singular_scan_fp,
    weighted_chart,
    weighted_discrepancy,
    weighted_multiplicity,
)
from fano_enriques.involutions import reference_sigma
from fano_enriques.linear_systems import basis, invariant_ramification_system, ramification_system
from fano_enriques.ambient import DivisorClass

from golden_data import GERM_TYPES
from oracles import weighted_order_bruteforce


def polys(nvars, max_exp=3, max_terms=6):
    return st.dictionaries(
        st.tuples(*[st.integers(0, max_exp)] * nvars),
        st.integers(-4, 4).filter(bool),
        max_size=max_terms,
    ).map(lambda t: Poly(nvars, t))


points3 = st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=5)] * 3)


def invariant_system(d1, d2):
    F = scroll(d1, d2, 0)
    return invariant_ramification_system(F, reference_sigma(F))


# --- polynomials -------------------------------------------------------------------


@given(polys(3), polys(3), points3)
def test_poly_ring_operations_commute_with_evaluation(f, g, pt):
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f - g).evaluate(pt) == f.evaluate(pt) - g.evaluate(pt)
    assert (f**2).evaluate(pt) == f.evaluate(pt) ** 2


@given(polys(3), polys(3))
def test_product_rule(f, g):
    for i in range(3):
        assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


@given(polys(3), polys(3), polys(3), points3)
def test_substitution_is_composition(f, a, b, pt):
    images = [a, b, Poly.var(3, 2)]
    inner = (a.evaluate(pt), b.evaluate(pt), pt[2])
    assert f.substitute(images).evaluate(pt) == f.evaluate(inner)


def test_poly_helpers():
    y, z = Poly.var(2, 0), Poly.var(2, 1)
    f = y**2 * z + 3 * z**4 - 1
    assert f.constant_term() == -1
    assert f.total_degree() == 4
    assert (f + 1).order() == 3
    assert f.weighted_order((3, 1)) == 0
    assert (f + 1).weighted_part((3, 1), 7) == y**2 * z
    assert f.degree_in(1) == 4 and f.involves(0)
    assert (y**2 * z).divide_monomial((1, 1)) == y
    assert f.to_str(["y", "z"])
    with pytest.raises(ValueError):
        Poly(2, {(1,): 1})
    with pytest.raises(ValueError):
        y + Poly.var(3, 0)


# --- F_p scan ----------------------------------------------------------------------


def brute_singular_points(f, p, fixed=None):
    fixed = fixed or {}
    n = f.nvars
    parts = [f] + [f.diff(i) for i in range(n)]
    out = []
    for pt in itertools.product(range(p), repeat=n):
        if any(pt[i] != v for i, v in fixed.items()):
            continue
        vals = [q.evaluate(pt) for q in parts]
        if all(Fraction(v).numerator % p == 0 for v in vals):
            out.append(pt)
    return sorted(out)


@settings(max_examples=30)
@given(polys(3, max_exp=3, max_terms=5), st.sampled_from([5, 7]))
def test_scan_matches_brute_force(f, p):
    assert singular_scan_fp(f, p) == brute_singular_points(f, p)
    assert singular_scan_fp(f, p, fixed={0: 0}) == brute_singular_points(f, p, {0: 0})


def test_scan_examples():
    y, z = Poly.var(2, 0), Poly.var(2, 1)
    assert singular_scan_fp(y**2 - z**3, 101) == [(0, 0)]
    assert singular_scan_fp(y**2 + z, 101) == []
    with pytest.raises(ValueError):
        singular_scan_fp(y, 100)


# --- local germs -------------------------------------------------------------------


def test_local_germ_shape():
    germ = local_cover_germ(invariant_system(8, 6), "generic")
    assert germ.vars == ("x", "y", "z", "t")
    assert germ.nlocal == 4
    assert len(germ.params) == len(invariant_system(8, 6))
    assert "g[x0^3*x2]" in germ.params
    data = germ.to_json()
    assert data["generic_params"] == len(germ.params) and data["equation"].startswith("x^2")


def test_local_germ_rejects_bad_input():
    with pytest.raises(ValueError):
        local_cover_germ(invariant_system(2, 2), "2:1")
    F = scroll(2, 1, 1)
    with pytest.raises(ValueError):
        local_cover_germ(basis(F, DivisorClass.scroll(4, -4)))


def test_germ_rejects_constant_term():
    with pytest.raises(ValueError):
        Germ.plain(("x", "y"), Poly(2, {(0, 0): 1, (2, 0): 1}))


@pytest.mark.parametrize(
    "pair,point",
    [(pair, point) for pair, table in sorted(GERM_TYPES.items()) for point in table],
)
def test_germ_types(pair, point):
    verdict = cdv_verdict(local_cover_germ(invariant_system(*pair), point))
    assert verdict.status == CDV
    assert verdict.type == GERM_TYPES[pair][point]
    assert len(set(verdict.per_seed)) == 1


def test_special_point_of_7_5_is_not_cdv_but_crepant():
    germ = local_cover_germ(invariant_system(7, 5), "0:1")
    verdict = cdv_verdict(germ)
    assert verdict.status == NOT_CDV and verdict.section == "t=0"
    assert weighted_discrepancy(germ, CREPANT_WEIGHTS) == 0


def test_seed_choice_does_not_change_generic_types():
    for seeds in [(4, 5, 6), (11, 12, 13, 14)]:
        verdict = cdv_verdict(local_cover_germ(invariant_system(7, 5), "generic"), seeds)
        assert str(verdict) == "cDV(E6)"


def test_smooth_and_three_variable_germs():
    x, y, z = (Poly.var(3, i) for i in range(3))
    assert cdv_verdict(Germ.plain("xyz", x**2 + y**2 + z**3)).type == "A2"
    x, y, z, t = (Poly.var(4, i) for i in range(4))
    assert cdv_verdict(Germ.plain("xyzt", x**2 + y + z**2 + t**5)).status == SMOOTH
    assert cdv_verdict(Germ.plain("xyzt", x**2 + y**4 + z**4 + t**4)).status == NOT_CDV
    with pytest.raises(ValueError):
        cdv_verdict(Germ.plain("xyzt", x**2 + y**2), seeds=())


# --- weighted blow-ups ---------------------------------------------------------------


@given(polys(4, max_exp=4, max_terms=6).filter(lambda p: not p.is_zero()), st.tuples(*[st.integers(1, 3)] * 4))
def test_weighted_multiplicity_matches_brute_force(f, weights):
    assert weighted_multiplicity(f, weights) == weighted_order_bruteforce(f.terms, weights)
    assert weighted_discrepancy(f, weights) == sum(weights) - 1 - weighted_order_bruteforce(f.terms, weights)


def test_weighted_multiplicity_errors():
    f = Poly(2, {(1, 1): 1})
    with pytest.raises(ValueError):
        weighted_multiplicity(f, (1,))
    with pytest.raises(ValueError):
        weighted_multiplicity(f, (0, 1))
    with pytest.raises(ValueError):
        weighted_multiplicity(Poly(2), (1, 1))


@pytest.mark.parametrize("chart_index", [1, 2, 3])
def test_weighted_chart_is_strict_transform(chart_index):
    germ = local_cover_germ(invariant_system(7, 5), "0:1")
    chart = weighted_chart(germ, CREPANT_WEIGHTS, chart_index)
    base = germ.specialize(1)
    strict = chart.specialize(1)
    wm = weighted_multiplicity(germ, CREPANT_WEIGHTS)
    rng = random.Random(chart_index)
    for _ in range(5):
        pt = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
        u = pt[chart_index]
        blown = [pt[j] * u ** CREPANT_WEIGHTS[j] if j != chart_index else u for j in range(4)]
        assert base.evaluate(blown) == u**wm * strict.evaluate(pt)


def test_weighted_chart_refuses_quotient_charts():
    germ = local_cover_germ(invariant_system(7, 5), "0:1")
    with pytest.raises(ValueError):
        weighted_chart(germ, CREPANT_WEIGHTS, 0)


def test_scan_of_the_7_5_blow_up_is_clean():
    germ = local_cover_germ(invariant_system(7, 5), "0:1")
    scan = scan_exceptional_divisor(germ, CREPANT_WEIGHTS, (1, 2, 3), 101)
    assert scan.clean
    assert scan.charts == ("y=u", "z=u", "t=u")
    # every singular point found is the strict transform of C, where the chart is cE6
    assert all(c == "t=u" and not any(p) for c, _, p in scan.singular_points)
    assert scan.explained == ("t=u origin: strict transform of C, cDV(E6)",)


def test_canonical_verdict_of_7_5():
    verdict = canonical_verdict(7, 5, invariant_system(7, 5))
    assert verdict
    evidence = {p.point: p.evidence for p in verdict.points}
    assert evidence == {"generic": "SYMBOLIC", "1:0": "SYMBOLIC", "0:1": "SCAN"}


def test_canonical_verdict_preconditions():
    F = scroll(4, 2, 0)
    with pytest.raises(ValueError):
        canonical_verdict(4, 2, ramification_system(scroll(4, 4, 0)))
    with pytest.raises(ValueError):
        # x0 is a fixed component here
        canonical_verdict(5, 1, invariant_system(5, 1))
    assert canonical_verdict(4, 2, invariant_ramification_system(F, reference_sigma(F)))


def test_point_evidence_on_a_non_canonical_pair():
    ev = point_evidence(invariant_system(9, 7), "generic")
    assert not ev.ok and ev.cdv.status != CDV
