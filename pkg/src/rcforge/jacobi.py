"""Exact Jacobi polynomials, their homogenisation, and the link with the
Rankin-Cohen coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .brackets import as_weights, rc_coefficients
from .exact import GaussianRational, as_fraction, factorial, pochhammer
from .polynomial import BivariatePoly, UnivariatePoly


@dataclass(frozen=True)
class JacobiParams:
    ell: int
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if self.ell < 0:
            raise ValueError("ell must be nonnegative")
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "beta", as_fraction(self.beta))


def rc_jacobi_params(w, ell: int) -> JacobiParams:
    """(alpha, beta) = (l1 - 1, 1 - l1 - l2 - 2 ell)."""
    w = as_weights(w)
    return JacobiParams(ell, w.lambda1 - 1, 1 - w.lambda1 - w.lambda2 - 2 * ell)


def _shifted_coefficients(p: JacobiParams) -> List[Fraction]:
    """Coefficients k_j of P in powers of (x - 1)/2."""
    a, b, n = p.alpha, p.beta, p.ell
    return [
        pochhammer(a + j + 1, n - j) * pochhammer(a + b + n + 1, j) / (factorial(j) * factorial(n - j))
        for j in range(n + 1)
    ]


def jacobi_polynomial(p: JacobiParams) -> UnivariatePoly:
    """P_ell^(alpha, beta) in the monomial basis, exact."""
    half_shift = UnivariatePoly([Fraction(-1, 2), Fraction(1, 2)])  # (x - 1)/2
    out = UnivariatePoly.zero()
    power = UnivariatePoly([1])
    for k in _shifted_coefficients(p):
        out = out + power * k
        power = power * half_shift
    return out


def inflate(p: JacobiParams) -> BivariatePoly:
    """y**ell * P(1 + 2x/y) as a homogeneous polynomial in (x, y).

    Substitution is done on the monomial coefficients: each x**k of P
    becomes (y + 2x)**k * y**(ell - k).
    """
    mono = jacobi_polynomial(p)
    n = p.ell
    if mono.degree > n:
        raise AssertionError("Jacobi polynomial degree exceeds ell")
    y_plus_2x = BivariatePoly({(0, 1): 1, (1, 0): 2})
    out = BivariatePoly.zero()
    power = BivariatePoly({(0, 0): 1})
    for k in range(n + 1):
        if k <= mono.degree and not mono.coeffs[k].is_zero():
            out = out + power * BivariatePoly({(0, n - k): mono.coeffs[k]})
        power = power * y_plus_2x
    return out


def rc_via_jacobi(w, ell: int) -> List[Fraction]:
    """Coefficient of x**(ell-j) y**j in the inflated Jacobi polynomial, j = 0..ell."""
    poly = inflate(rc_jacobi_params(w, ell))
    out = []
    for j in range(ell + 1):
        c = poly.terms.get((ell - j, j), GaussianRational(0))
        if c.im != 0:
            raise AssertionError("non-real Jacobi coefficient")
        out.append(c.re)
    return out


def proportionality_ratio(a, b) -> Optional[Fraction]:
    """The rational r with a == r * b componentwise, or None if no such r."""
    if len(a) != len(b):
        return None
    ratio = None
    for x, y in zip(a, b):
        x, y = Fraction(x), Fraction(y)
        if y == 0:
            if x != 0:
                return None
            continue
        r = x / y
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ratio


def correspondence_ratio(w, ell: int) -> Optional[Fraction]:
    """Ratio rc_via_jacobi / rc_coefficients (expected (-1)**ell)."""
    return proportionality_ratio(rc_via_jacobi(w, ell), rc_coefficients(w, ell).coeffs)


def jacobi_ode_residual(p: JacobiParams, poly: UnivariatePoly | None = None) -> UnivariatePoly:
    """(1 - x^2) P'' + (beta - alpha - (alpha + beta + 2) x) P' + ell (ell + alpha + beta + 1) P."""
    if poly is None:
        poly = jacobi_polynomial(p)
    a, b, n = p.alpha, p.beta, p.ell
    one_minus_x2 = UnivariatePoly([1, 0, -1])
    drift = UnivariatePoly([b - a, -(a + b + 2)])
    return one_minus_x2 * poly.derivative(2) + drift * poly.derivative(1) + poly * (n * (n + a + b + 1))


def jacobi_value(p: JacobiParams, x) -> Fraction:
    """Exact value at a rational (or binary-float) point via the shifted sum."""
    xq = Fraction(x)
    s = (xq - 1) / 2
    acc = Fraction(0)
    for k in reversed(_shifted_coefficients(p)):
        acc = acc * s + k
    return acc


def jacobi_genfun_check(alpha, beta, x: float, t: float, L: int) -> Tuple[float, float]:
    """Partial sum of P_ell(x) t**ell over ell <= L against the closed form
    2**(a+b) / (R (1 - t + R)**a (1 + t + R)**b), R = sqrt(1 - 2xt + t**2)."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    x, t = float(x), float(t)
    if not abs(t) < 1:
        raise ValueError("need |t| < 1")
    if not -1 < x < 1:
        raise ValueError("need x in (-1, 1)")
    disc = 1 - 2 * x * t + t * t
    if disc <= 0:
        raise ValueError("R must be positive")
    R = math.sqrt(disc)
    b_minus, b_plus = 1 - t + R, 1 + t + R
    for base, expo in ((b_minus, alpha), (b_plus, beta)):
        if base <= 0 and expo.denominator != 1:
            raise ValueError("non-integer power of a non-positive base")
        if base == 0:
            raise ValueError("zero base in closed form")

    closed = 2.0 ** float(alpha + beta) / (R * b_minus ** float(alpha) * b_plus ** float(beta))

    tq = Fraction(t)
    partial = Fraction(0)
    tpow = Fraction(1)
    for ell in range(L + 1):
        partial += jacobi_value(JacobiParams(ell, alpha, beta), x) * tpow
        tpow *= tq
    return float(partial), closed
