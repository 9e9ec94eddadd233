import random
import warnings

import pytest
from hypothesis import given, strategies as st

from fano_enriques.ambient import DivisorClass, StratumSet, all_supports, parse_monomial, scroll, wps
from fano_enriques.involutions import fixed_locus, reference_sigma
from fano_enriques.linear_systems import (
    MonomialSystem,
    basis,
    invariant_ramification_system,
    m_system_invariant,
    ramification_system,
)
from fano_enriques.strata import (
    EmptySystemWarning,
    UnsupportedStratum,
    base_locus,
    fixed_component,
    generic_avoidance,
    mult_along,
    mult_witness,
    restrict_to_stratum,
)

triples = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)).map(lambda t: tuple(sorted(t, reverse=True)))
classes = st.tuples(st.integers(0, 3), st.integers(-8, 4))


def brute_base_locus(ambient, monomials):
    supports = [frozenset(v for v, e in zip(ambient.variables, m) if e) for m in monomials]
    hits = [
        vanish
        for vanish in all_supports(ambient)
        if ambient.is_valid_vanishing(vanish) and all(vanish & s for s in supports)
    ]
    return StratumSet(ambient, hits)


def random_subsystem(system, rng):
    mons = list(system.iter_monomials())
    k = rng.randint(1, len(mons))
    return system.subsystem(rng.sample(mons, k))


def _nonempty(d, cls):
    return basis(scroll(*d), DivisorClass.scroll(*cls))


@given(triples, classes, st.integers(0, 10**6))
def test_base_locus_matches_materialized_supports(d, cls, seed):
    system = _nonempty(d, cls)
    if system.is_empty():
        return
    for sub in (system, random_subsystem(system, random.Random(seed))):
        assert base_locus(sub) == brute_base_locus(sub.ambient, list(sub.iter_monomials()))


@given(triples, classes, st.integers(0, 10**6))
def test_base_locus_grows_when_system_shrinks(d, cls, seed):
    system = _nonempty(d, cls)
    if system.is_empty():
        return
    rng = random.Random(seed)
    big = random_subsystem(system, rng)
    small = big.subsystem(rng.sample(list(big.iter_monomials()), rng.randint(1, len(big))))
    bs_big, bs_small = base_locus(big), base_locus(small)
    assert all(bs_small.contains(s) for s in bs_big.strata)


def test_empty_system_warns_and_returns_everything():
    F = scroll(2, 1, 0)
    with pytest.warns(EmptySystemWarning):
        bs = base_locus(basis(F, DivisorClass.scroll(-1, 0)))
    assert bs == StratumSet.whole(F)


def test_constant_has_no_base_points():
    F = scroll(1, 1, 1)
    assert base_locus(basis(F, DivisorClass.scroll(0, 0))).is_empty()


def test_wps_base_locus():
    P = wps([1, 1, 1, 2, 3])
    sextics = basis(P, DivisorClass((6,)))
    assert base_locus(sextics).is_empty()
    only_x0 = sextics.subsystem([(6, 0, 0, 0, 0), (0, 0, 0, 3, 0)])
    assert base_locus(only_x0) == StratumSet(P, [{"x0", "x3"}])


@given(triples, classes, st.integers(0, 10**6))
def test_mult_along_c(d, cls, seed):
    system = _nonempty(d, cls)
    if system.is_empty():
        return
    sub = random_subsystem(system, random.Random(seed))
    expected = min(m[2] + m[3] for m in sub.iter_monomials())
    assert mult_along(sub, {"x0", "x1"}) == expected
    w = mult_witness(sub, {"x0", "x1"})
    assert w in sub and w[2] + w[3] == expected


def test_mult_along_rejects_other_strata():
    D = ramification_system(scroll(4, 2, 0))
    with pytest.raises(UnsupportedStratum):
        mult_along(D, {"x0"})
    with pytest.raises(UnsupportedStratum):
        mult_along(D, {"t0", "x0"})


@given(triples, classes, st.integers(0, 10**6))
def test_fixed_component_matches_common_divisor(d, cls, seed):
    system = _nonempty(d, cls)
    if system.is_empty():
        return
    sub = random_subsystem(system, random.Random(seed))
    mons = list(sub.iter_monomials())
    common = [v for j, v in enumerate(sub.ambient.variables) if all(m[j] for m in mons)]
    got = fixed_component(sub)
    assert (got is None) == (not common)
    if got is not None:
        assert got in common


def test_fixed_component_example():
    assert fixed_component(ramification_system(scroll(5, 1, 0))) == "x0"
    assert fixed_component(ramification_system(scroll(4, 2, 0))) is None


@given(triples, classes, st.sampled_from([("t0", "x1"), ("t1", "x0", "x2"), ("x0", "x1"), ("x2",), ("t1",)]))
def test_restrict_keeps_nonvanishing_monomials(d, cls, stratum):
    system = _nonempty(d, cls)
    F = system.ambient
    idx = [F.index(v) for v in stratum]
    expected = {m for m in system.iter_monomials() if not any(m[i] for i in idx)}
    assert set(restrict_to_stratum(system, stratum).iter_monomials()) == expected


def _span(F, texts):
    return MonomialSystem.from_monomials(F, [parse_monomial(F, t) for t in texts])


def test_avoidance_moving_zero_avoids_fixed_zero():
    F = scroll(1, 1, 0)
    line = StratumSet(F, [{"t0", "x1"}])
    assert generic_avoidance(_span(F, ["x2^2"]), _span(F, ["x2", "t1*x0"]), line)


def test_avoidance_common_fixed_zero_fails():
    F = scroll(1, 1, 0)
    line = StratumSet(F, [{"t0", "x1"}])
    v = generic_avoidance(_span(F, ["x2^2"]), _span(F, ["x2"]), line)
    assert not v and v.witness == frozenset({"t0", "x1"})
    assert v.to_json(F)["witnesses"][0]["reason"] == "common base point on fixed curve"


def test_avoidance_curve_inside_every_member_fails():
    F = scroll(1, 1, 0)
    line = StratumSet(F, [{"t0", "x1"}])
    v = generic_avoidance(_span(F, ["t0*x1*x2", "t1*x1*x2"]), _span(F, ["x2", "t1*x0"]), line)
    assert not v
    assert v.reasons == ("fixed curve inside every D member",)


def test_avoidance_fixed_points():
    F = scroll(1, 1, 0)
    point = StratumSet(F, [{"t0", "x0", "x1"}])
    assert not generic_avoidance(_span(F, ["t1*x0*x2", "t0*x1*x2"]), _span(F, ["t1*x1", "t0*x0"]), point)
    assert generic_avoidance(_span(F, ["x2^2"]), _span(F, ["t1*x1", "t0*x0"]), point)


def test_avoidance_rejects_surfaces():
    F = scroll(1, 1, 0)
    with pytest.raises(UnsupportedStratum):
        generic_avoidance(_span(F, ["x2^2"]), _span(F, ["x2"]), StratumSet(F, [{"x0"}]))


@pytest.mark.parametrize("pair", [(2, 2), (4, 2), (8, 6), (3, 1), (7, 5)])
def test_avoidance_on_accepted_pairs(pair):
    F = scroll(*pair, 0)
    sigma = reference_sigma(F)
    with warnings.catch_warnings():
        warnings.simplefilter("error", EmptySystemWarning)
        verdict = generic_avoidance(
            invariant_ramification_system(F, sigma), m_system_invariant(F, sigma), fixed_locus(F, sigma)
        )
    assert verdict.holds
