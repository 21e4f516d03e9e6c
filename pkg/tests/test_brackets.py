from fractions import Fraction
from math import comb, perm

import pytest
from hypothesis import given, strategies as st

from rcforge.brackets import (
    WeightPair,
    bracket_matrix,
    exact_rank,
    rc_apply,
    rc_coefficients,
    scaling_constant,
    closed_form_constant,
)
from rcforge.exact import GaussianRational
from rcforge.polynomial import BivariatePoly, UnivariatePoly

small = st.fractions(min_value=-9, max_value=9, max_denominator=5)
coeff = st.builds(GaussianRational, small, small)
bivariates = st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 5)), coeff, max_size=6).map(BivariatePoly)
weights = st.builds(WeightPair, st.integers(1, 5), st.integers(1, 5))
ells = st.integers(0, 6)


def brute_force_rc(l1, l2, ell, terms):
    """RC on monomials written out directly: d1^p d2^q zeta1^a zeta2^b -> falling factorials times z^(a+b-ell)."""
    out = {}
    for (a, b), c in terms.items():
        for j in range(ell + 1):
            k = (-1) ** j * comb(l1 + ell - 1, j) * comb(l2 + ell - 1, ell - j)
            p, q = ell - j, j
            if p > a or q > b:
                continue
            deg = a + b - ell
            out[deg] = out.get(deg, 0) + c * k * perm(a, p) * perm(b, q)
    return out


@pytest.mark.parametrize("ell, expected", [(0, [1]), (1, [1, -1]), (2, [1, -4, 1])])
def test_rc_coefficients_weight_one(ell, expected):
    assert list(rc_coefficients((1, 1), ell)) == expected


def test_rc_coefficients_frozen():
    # frozen from the brute-force binomial oracle
    assert list(rc_coefficients((2, 3), 3)) == [10, -40, 30, -4]
    assert list(rc_coefficients((1, 2), 2)) == [3, -6, 1]


@pytest.mark.parametrize(
    "w, ell, f, expected",
    [
        ((1, 1), 1, BivariatePoly({(1, 1): 1}), UnivariatePoly([])),
        ((1, 1), 1, BivariatePoly({(2, 0): 1}), UnivariatePoly([0, 2])),
        ((1, 1), 2, BivariatePoly({(2, 2): 1}), UnivariatePoly([0, 0, -12])),
    ],
)
def test_rc_apply_examples(w, ell, f, expected):
    assert rc_apply(w, ell, f) == expected


@pytest.mark.parametrize(
    "w, ell, expected",
    [((1, 1), 0, 1), ((1, 1), 1, -1), ((1, 1), 2, Fraction(1, 2)), ((2, 1), 0, -1), ((3, 2), 2, Fraction(5, 6)), ((2, 2), 1, Fraction(3, 2))],
)
def test_scaling_constant(w, ell, expected):
    assert scaling_constant(w, ell) == expected


@given(weights, ells, bivariates)
def test_rc_apply_matches_brute_force(w, ell, f):
    got = rc_apply(w, ell, f)
    oracle = brute_force_rc(w.lambda1, w.lambda2, ell, f.terms)
    degree = max(oracle, default=-1)
    expected = UnivariatePoly([oracle.get(k, 0) for k in range(degree + 1)], f.field) if oracle else UnivariatePoly.zero(f.field)
    assert got == expected


@given(weights, ells, bivariates)
def test_swap_symmetry(w, ell, f):
    assert rc_apply(w, ell, f) == rc_apply(w.swapped(), ell, f.swap()) * ((-1) ** ell)


@given(weights, ells, bivariates, bivariates, coeff)
def test_linearity(w, ell, f, g, c):
    assert rc_apply(w, ell, f + g * c) == rc_apply(w, ell, f) + rc_apply(w, ell, g) * c


@given(st.integers(1, 5), st.integers(0, 3), bivariates)
def test_even_order_kills_antisymmetric_input(lam, half, f):
    anti = f - f.swap()
    assert rc_apply((lam, lam), 2 * half, anti).degree == -1


@given(weights, ells)
def test_coefficient_count_and_signs(w, ell):
    rc = rc_coefficients(w, ell)
    assert len(rc) == ell + 1
    assert all((c > 0) == (j % 2 == 0) for j, c in enumerate(rc))


@given(weights, ells)
def test_scaling_constant_magnitude(w, ell):
    assert abs(scaling_constant(w, ell)) == closed_form_constant(w, ell)


def test_weights_validated():
    with pytest.raises(ValueError):
        WeightPair(0, 1)
    with pytest.raises(ValueError):
        rc_coefficients((1, 1), -1)
    assert WeightPair(2, 3).output_weight(2) == 9


def test_bracket_matrix_rank_small():
    assert exact_rank(bracket_matrix((1, 1), 1)) == 4
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([]) == 0
