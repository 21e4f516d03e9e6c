import pytest
from hypothesis import given, strategies as st

from rcforge.exact import GaussianRational
from rcforge.polynomial import (
    ZETA1,
    ZETA2,
    BivariatePoly,
    FieldMismatchError,
    UnivariatePoly,
    evaluate,
    partial_derivative,
    restrict_diagonal,
)

small = st.fractions(min_value=-9, max_value=9, max_denominator=5)
coeff = st.builds(GaussianRational, small, small)
bivariates = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), coeff, max_size=6).map(BivariatePoly)
points = st.builds(GaussianRational, small, small)


def test_partial_derivative_examples():
    p = BivariatePoly({(2, 2): 1})
    assert partial_derivative(p, 1, 1) == BivariatePoly({(1, 2): 2})
    assert partial_derivative(p, 2, 0) == p
    assert p.partial_derivative(1, 1).partial_derivative(2, 1) == BivariatePoly({(1, 1): 4})


def test_restrict_diagonal_examples():
    assert restrict_diagonal(ZETA1 * ZETA2) == UnivariatePoly([0, 0, 1])
    assert restrict_diagonal(ZETA1 - ZETA2).degree == -1
    p = 2 * ZETA1 * ZETA1 - 3 * ZETA1 * ZETA2 + ZETA2 * ZETA2
    assert restrict_diagonal(p).degree == -1


def test_evaluate_examples():
    assert evaluate(UnivariatePoly([1, 0, 1]), 2) == 5
    assert evaluate(UnivariatePoly([]), GaussianRational(3, 1)) == 0
    assert evaluate(BivariatePoly({(2, 1): 1}), 2, 3) == 12


@given(bivariates, bivariates)
def test_restriction_is_multiplicative(p, q):
    assert (p * q).restrict_diagonal() == p.restrict_diagonal() * q.restrict_diagonal()


@given(bivariates, st.integers(0, 3), st.integers(0, 3))
def test_mixed_partials_commute(p, a, b):
    assert p.partial_derivative(1, a).partial_derivative(2, b) == p.partial_derivative(2, b).partial_derivative(1, a)


@given(bivariates, bivariates, points, points)
def test_evaluation_is_a_ring_map(p, q, x, y):
    assert (p * q).evaluate(x, y) == p.evaluate(x, y) * q.evaluate(x, y)
    assert (p + q).evaluate(x, y) == p.evaluate(x, y) + q.evaluate(x, y)


@given(bivariates, points)
def test_diagonal_restriction_matches_evaluation(p, x):
    assert p.restrict_diagonal().evaluate(x) == p.evaluate(x, x)


@given(bivariates)
def test_serialisation_round_trip(p):
    assert BivariatePoly.from_dict(p.to_dict()) == p


@given(bivariates, points, points)
def test_numeric_evaluator_matches_exact(p, x, y):
    exact = complex(p.evaluate(x, y))
    assert abs(p.numeric()(complex(x), complex(y)) - exact) <= 1e-9 * (1 + abs(exact))


def test_univariate_algebra():
    p = UnivariatePoly([1, 2, 3])
    assert p.derivative() == UnivariatePoly([2, 6])
    assert p.derivative(3).degree == -1
    assert (p - p).degree == -1
    assert UnivariatePoly.from_dict(p.to_dict()) == p


def test_fields_do_not_mix():
    exact = UnivariatePoly([1, 2])
    floating = UnivariatePoly([1.5 + 0j, 2.0 + 0j])
    with pytest.raises(FieldMismatchError):
        exact + floating
    assert exact.evaluate(0.5 + 0j) == pytest.approx(2.0)


def test_bidegree_and_swap():
    p = BivariatePoly({(3, 1): 1, (0, 2): 5})
    assert p.total_degree == 4
    assert p.bidegree == (3, 2)
    assert p.swap() == BivariatePoly({(1, 3): 1, (2, 0): 5})
