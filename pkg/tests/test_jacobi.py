from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rcforge.brackets import rc_coefficients
from rcforge.jacobi import (
    JacobiParams,
    correspondence_ratio,
    inflate,
    jacobi_genfun_check,
    jacobi_ode_residual,
    jacobi_polynomial,
    jacobi_value,
    proportionality_ratio,
    rc_jacobi_params,
    rc_via_jacobi,
)
from rcforge.polynomial import BivariatePoly, UnivariatePoly

half_integers = st.integers(-20, 20).map(lambda k: Fraction(k, 2))


def gbinom(y, k):
    out = 1.0
    for i in range(k):
        out *= (y - i) / (i + 1)
    return out


def jacobi_oracle(n, a, b, x):
    """Binomial-sum form: sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)."""
    a, b, x = float(a), float(b), float(x)
    return sum(gbinom(n + a, n - s) * gbinom(n + b, s) * ((x - 1) / 2) ** s * ((x + 1) / 2) ** (n - s)
               for s in range(n + 1))


def test_jacobi_polynomial_examples():
    assert jacobi_polynomial(JacobiParams(0, 3, -7)) == UnivariatePoly([1])
    assert jacobi_polynomial(JacobiParams(1, 0, 0)) == UnivariatePoly([0, 1])
    s = UnivariatePoly([-1, 1])  # x - 1
    expected = UnivariatePoly([1]) - s * 2 + s * s * Fraction(1, 4)
    assert jacobi_polynomial(JacobiParams(2, 0, -5)) == expected


def test_inflate_examples():
    assert inflate(JacobiParams(0, 2, 2)) == BivariatePoly({(0, 0): 1})
    assert inflate(JacobiParams(1, 0, -4)) == BivariatePoly({(0, 1): 1, (1, 0): -2})
    assert inflate(JacobiParams(2, 0, -5)) == BivariatePoly({(2, 0): 1, (1, 1): -4, (0, 2): 1})


@pytest.mark.parametrize(
    "w, ell, expected",
    [((1, 1), 2, [1, -4, 1]), ((1, 2), 1, [-2, 1]), ((1, 2), 2, [3, -6, 1])],
)
def test_rc_via_jacobi_examples(w, ell, expected):
    assert rc_via_jacobi(w, ell) == expected


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 9))
def test_correspondence_sign(l1, l2, ell):
    assert correspondence_ratio((l1, l2), ell) == (-1) ** ell
    assert jacobi_ode_residual(rc_jacobi_params((l1, l2), ell)).degree == -1


@pytest.mark.parametrize("p", [JacobiParams(0, 4, 4), JacobiParams(1, 0, 0), JacobiParams(2, 1, -7)])
def test_ode_examples(p):
    assert jacobi_ode_residual(p).degree == -1


@given(st.integers(0, 7), half_integers, half_integers)
def test_ode_holds_for_generic_parameters(ell, a, b):
    assert jacobi_ode_residual(JacobiParams(ell, a, b)).degree == -1


def test_ode_detects_a_wrong_polynomial():
    p = JacobiParams(2, 1, 1)
    assert jacobi_ode_residual(p, UnivariatePoly([0, 0, 1])).degree >= 0


@given(st.integers(0, 8), st.integers(0, 6).map(Fraction), half_integers,
       st.fractions(min_value=-1, max_value=1, max_denominator=16))
def test_values_match_binomial_sum(ell, a, b, x):
    p = JacobiParams(ell, a, b)
    exact = float(jacobi_value(p, x))
    assert exact == pytest.approx(jacobi_oracle(ell, a, b, x), rel=1e-9, abs=1e-9 * (1 + abs(exact)))
    poly_value = complex(jacobi_polynomial(p).evaluate(x)).real
    assert poly_value == pytest.approx(exact, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("x, t", [(0.3, 0.2), (-0.7, 0.5), (0.9, -0.3)])
def test_legendre_generating_function(x, t):
    partial, closed = jacobi_genfun_check(0, 0, x, t, 40)
    assert closed == pytest.approx((1 - 2 * x * t + t * t) ** -0.5, rel=1e-14)
    assert abs(partial - closed) <= 1e-10


@pytest.mark.parametrize("a, b, x", [(0, 0, 0.4), (2, -5, -0.3), (Fraction(1, 2), Fraction(-3, 2), 0.8)])
def test_genfun_at_zero_t(a, b, x):
    partial, closed = jacobi_genfun_check(a, b, x, 0.0, 10)
    assert partial == 1.0
    assert closed == pytest.approx(1.0, rel=1e-14)


def test_genfun_fixture():
    partial, closed = jacobi_genfun_check(1, -3, 0.5, 0.2, 40)
    assert abs(partial - closed) <= 1e-10
    oracle = sum(jacobi_oracle(k, 1, -3, 0.5) * 0.2 ** k for k in range(41))
    assert partial == pytest.approx(oracle, rel=1e-12)


def test_genfun_truncation_error_decays_geometrically():
    errs = [abs(p - c) for p, c in (jacobi_genfun_check(0, 0, 0.2, 0.5, L) for L in (5, 10, 15))]
    assert errs[2] < errs[1] < errs[0]
    assert errs[1] / errs[0] < 0.5 ** 4


def test_genfun_domain_checks():
    with pytest.raises(ValueError):
        jacobi_genfun_check(0, 0, 0.2, 1.5, 10)
    with pytest.raises(ValueError):
        jacobi_genfun_check(0, 0, 1.2, 0.1, 10)


def test_proportionality_ratio():
    assert proportionality_ratio([2, -4, 0], [1, -2, 0]) == 2
    assert proportionality_ratio([2, -4], [1, 2]) is None
    assert proportionality_ratio([1, 0], [0, 0]) is None
    assert proportionality_ratio([1], [1, 2]) is None
    assert rc_via_jacobi((2, 3), 3) == [-c for c in rc_coefficients((2, 3), 3)]
