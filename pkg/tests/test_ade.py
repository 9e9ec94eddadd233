from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from fano_enriques.germs import NOT_SIMPLE, Poly, ade_type, intersection_multiplicity, milnor_number
from fano_enriques.germs import ade as ade_module

from golden_data import NORMAL_FORMS
from oracles import poly_to_sympy, sympy_intersection_number, sympy_milnor
from perturb import perturbed

Y, Z = sympy.symbols("y z")


def P(terms):
    return Poly(2, {e: Fraction(c) for e, c in terms.items()})


plane_polys = st.dictionaries(
    st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda e: 2 <= e[0] + e[1] <= 7),
    st.integers(-5, 5).filter(bool),
    min_size=1,
    max_size=6,
).map(P)


noise = st.dictionaries(
    st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda e: 2 <= e[0] + e[1] <= 7),
    st.integers(-3, 3).filter(bool),
    max_size=4,
)


def _with_noise(base, extra):
    terms = dict(base)
    for e, c in extra.items():
        terms[e] = terms.get(e, 0) + c
    return P(terms)


isolated_germs = st.builds(
    lambda a, b, c, extra: _with_noise({(a, 0): 1, (0, b): c}, extra),
    st.integers(2, 5),
    st.integers(2, 6),
    st.sampled_from([1, -2, 3]),
    noise,
)
transverse_pairs = st.builds(
    lambda a, b, n1, n2: (_with_noise({(a, 0): 1}, n1), _with_noise({(0, b): 1}, n2)),
    st.integers(1, 4),
    st.integers(1, 5),
    noise,
    noise,
)


@pytest.mark.parametrize("label", sorted(NORMAL_FORMS))
def test_normal_forms(label):
    assert ade_type(P(NORMAL_FORMS[label])) == label


@pytest.mark.parametrize("label", sorted(NORMAL_FORMS))
@pytest.mark.parametrize("seed", range(5))
def test_normal_forms_after_perturbation(label, seed):
    assert ade_type(perturbed(label, seed)) == label


@pytest.mark.parametrize(
    "terms",
    [
        {(4, 0): 1, (0, 4): 1},
        {(3, 0): 1, (0, 6): 1},
        {(3, 0): 1, (1, 4): 1},
        {(2, 0): 1},
        {(2, 1): 1},
        {(3, 0): 1},
    ],
)
def test_not_simple(terms):
    assert ade_type(P(terms)) == NOT_SIMPLE


def test_bad_inputs():
    with pytest.raises(ValueError):
        ade_type(P({(1, 0): 1, (0, 2): 1}))
    with pytest.raises(ValueError):
        ade_type(P({(0, 0): 1, (2, 0): 1}))
    with pytest.raises(ValueError):
        ade_type(Poly(3, {(2, 0, 0): 1}))


def test_intersection_multiplicity_examples():
    y, z = Poly.var(2, 0), Poly.var(2, 1)
    assert intersection_multiplicity(y, z) == 1
    assert intersection_multiplicity(y**2 - z**3, y) == 3
    assert intersection_multiplicity(y**2 - z**3, y**2 + z**3) == 6
    assert intersection_multiplicity(y * z, y * (z + 1)) is None
    assert intersection_multiplicity(y + 1, z) == 0


def test_milnor_numbers_of_normal_forms():
    for label, terms in NORMAL_FORMS.items():
        assert milnor_number(P(terms)) == int(label[1:])


@given(plane_polys, plane_polys)
def test_intersection_symmetric(f, g):
    assert intersection_multiplicity(f, g) == intersection_multiplicity(g, f)


@given(plane_polys, plane_polys, plane_polys)
def test_intersection_additive(f, g, h):
    a, b = intersection_multiplicity(f, g), intersection_multiplicity(f, h)
    total = intersection_multiplicity(f, g * h)
    if a is None or b is None:
        assert total is None
    else:
        assert total == a + b


@given(plane_polys, plane_polys, st.integers(0, 12))
def test_any_cut_above_the_answer_reproduces_it(f, g, extra):
    r = intersection_multiplicity(f, g)
    assume(r is not None)
    n = r + extra
    assert ade_module._fulton(ade_module._truncate(f, n), ade_module._truncate(g, n), n) == r


@settings(max_examples=40)
@given(isolated_germs, st.integers(0, 1000))
def test_milnor_matches_resultant_oracle(f, seed):
    mu = milnor_number(f)
    expected = sympy_milnor(poly_to_sympy(f, Y, Z), Y, Z, seed)
    assume(expected is not None and mu is not None)
    assert mu == expected


@settings(max_examples=40)
@given(transverse_pairs, st.integers(0, 1000))
def test_intersection_matches_resultant_oracle(pair, seed):
    f, g = pair
    got = intersection_multiplicity(f, g)
    expected = sympy_intersection_number(poly_to_sympy(f, Y, Z), poly_to_sympy(g, Y, Z), Y, Z, seed)
    assume(expected is not None and got is not None)
    assert got == expected
