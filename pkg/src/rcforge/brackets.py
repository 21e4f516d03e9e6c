"""Rankin-Cohen bracket coefficients and their action on polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .exact import binomial, factorial
from .polynomial import BivariatePoly, UnivariatePoly


@dataclass(frozen=True)
class WeightPair:
    lambda1: int
    lambda2: int

    def __post_init__(self):
        for name in ("lambda1", "lambda2"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    def swapped(self) -> "WeightPair":
        return WeightPair(self.lambda2, self.lambda1)

    def output_weight(self, ell: int) -> int:
        return self.lambda1 + self.lambda2 + 2 * ell


def as_weights(w) -> WeightPair:
    if isinstance(w, WeightPair):
        return w
    l1, l2 = w
    return WeightPair(int(l1), int(l2))


@dataclass(frozen=True)
class RCCoefficients:
    """``coeffs[j]`` multiplies ``d1**(ell-j) d2**j``."""

    weights: WeightPair
    ell: int
    coeffs: Tuple[int, ...]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j]


def rc_coefficients(w, ell: int) -> RCCoefficients:
    w = as_weights(w)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    a = w.lambda1 + ell - 1
    b = w.lambda2 + ell - 1
    coeffs = tuple((-1) ** j * binomial(a, j) * binomial(b, ell - j) for j in range(ell + 1))
    return RCCoefficients(w, ell, coeffs)


def rc_apply(w, ell: int, f: BivariatePoly) -> UnivariatePoly:
    """RC^(ell) f: the bidifferential operator followed by restriction to the diagonal."""
    rc = rc_coefficients(w, ell)
    out = UnivariatePoly.zero(f.field)
    for j, c in enumerate(rc.coeffs):
        if c == 0:
            continue
        g = f.partial_derivative(1, ell - j).partial_derivative(2, j)
        out = out + g.restrict_diagonal() * c
    return out


def scaling_constant(w, ell: int) -> Fraction:
    """Signed constant s with T^(ell) = s * RC^(ell) for the double contour transform."""
    w = as_weights(w)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    sign = -1 if (w.lambda1 + ell - 1) % 2 else 1
    return sign * closed_form_constant(w, ell)


def closed_form_constant(w, ell: int) -> Fraction:
    """(l1+l2+ell-2)! / ((l1+ell-1)! (l2+ell-1)!), the t**ell weight of the
    closed-form generating operator."""
    w = as_weights(w)
    l1, l2 = w.lambda1, w.lambda2
    return Fraction(factorial(l1 + l2 + ell - 2), factorial(l1 + ell - 1) * factorial(l2 + ell - 1))


def bracket_matrix(w, d: int):
    """Exact matrix of f -> (RC^(l) f)_{l <= 2d} on polynomials of bidegree <= (d, d).

    Columns follow the monomials zeta1**a zeta2**b (a, b <= d); rows are the
    coefficients of z**k in RC^(l) f, stacked over l.
    """
    w = as_weights(w)
    monomials = [(a, b) for a in range(d + 1) for b in range(d + 1)]
    rows = []
    for ell in range(2 * d + 1):
        images = [rc_apply(w, ell, BivariatePoly({m: 1})) for m in monomials]
        for k in range(2 * d - ell + 1):
            row = []
            for img in images:
                c = img.coeffs[k] if k < len(img.coeffs) else 0
                row.append(c.re if c else Fraction(0))
            rows.append(row)
    return rows


def exact_rank(matrix) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not m:
        return 0
    n_cols = len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                factor = m[r][col] / p
                m[r] = [x - factor * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank
