"""SL(2) action, the representations varpi_lambda and d varpi_lambda, and
residuals of the covariance identities for the brackets and their kernels.

Algebraic identities are checked in exact Gaussian-rational arithmetic;
only the transform-level identity needs quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List

import numpy as np

from .brackets import as_weights, rc_apply, rc_coefficients
from .contour import HSeries, kernel_Ah, transform_Tl
from .exact import GaussianRational, binomial, factorial
from .polynomial import EXACT, FLOAT, BivariatePoly, UnivariatePoly, _is_float_scalar

FLOAT_DET_TOL = 1e-12
FLOAT_POLE_TOL = 1e-12


class MoebiusPoleError(ZeroDivisionError):
    pass


class ContourValidityError(ValueError):
    pass


def _field_of(*xs) -> str:
    if any(_is_float_scalar(x) for x in xs):
        if any(isinstance(x, GaussianRational) for x in xs):
            raise TypeError("mixed exact and floating entries")
        return FLOAT
    return EXACT


def _lift(x, field):
    return GaussianRational.coerce(x) if field == EXACT else complex(x)


@dataclass(frozen=True)
class MoebiusElement:
    """[[a, b], [c, d]] in SL(2, C)."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        field = _field_of(self.a, self.b, self.c, self.d)
        for name in "abcd":
            object.__setattr__(self, name, _lift(getattr(self, name), field))
        det = self.a * self.d - self.b * self.c
        if field == EXACT:
            if det != 1:
                raise ValueError(f"determinant {det} != 1")
        elif abs(det - 1) > FLOAT_DET_TOL:
            raise ValueError(f"determinant {det} differs from 1 by more than {FLOAT_DET_TOL}")

    @property
    def field(self) -> str:
        return EXACT if isinstance(self.a, GaussianRational) else FLOAT

    @classmethod
    def identity(cls, field: str = EXACT) -> "MoebiusElement":
        return cls(*(_lift(x, field) for x in (1, 0, 0, 1)))

    def inverse(self) -> "MoebiusElement":
        return MoebiusElement(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, o: "MoebiusElement") -> "MoebiusElement":
        return MoebiusElement(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def to_float(self) -> "MoebiusElement":
        if self.field == FLOAT:
            return self
        return MoebiusElement(complex(self.a), complex(self.b), complex(self.c), complex(self.d))

    def cocycle(self, z):
        """c z + d."""
        return self.c * z + self.d


@dataclass(frozen=True)
class LieElement:
    """Z = [[p, q], [r, -p]] in sl(2, C)."""

    p: object = 0
    q: object = 0
    r: object = 0

    def __post_init__(self):
        field = _field_of(self.p, self.q, self.r)
        for name in "pqr":
            object.__setattr__(self, name, _lift(getattr(self, name), field))


LIE_E = LieElement(0, 1, 0)
LIE_H = LieElement(1, 0, 0)
LIE_F = LieElement(0, 0, 1)


def _check_denominator(den, field):
    if field == EXACT or isinstance(den, GaussianRational):
        if den == 0:
            raise MoebiusPoleError("c z + d = 0")
    elif np.any(np.abs(den) < FLOAT_POLE_TOL):
        raise MoebiusPoleError(f"|c z + d| < {FLOAT_POLE_TOL}")


def mobius_apply(g: MoebiusElement, z):
    den = g.c * z + g.d
    _check_denominator(den, g.field)
    return (g.a * z + g.b) / den


def gz_identity_residual(g: MoebiusElement, zeta, z):
    """g.zeta - g.z - (zeta - z) / ((c zeta + d)(c z + d))."""
    lhs = mobius_apply(g, zeta) - mobius_apply(g, z)
    return lhs - (zeta - z) / (g.cocycle(zeta) * g.cocycle(z))


def pi_action(lam: int, g: MoebiusElement, f: Callable) -> Callable:
    """varpi_lambda(g) f.  The defining formula is written for g**-1, so the
    entries used below are those of the inverse matrix."""
    gi = g.inverse()

    def acted(z):
        den = gi.c * z + gi.d
        _check_denominator(den, gi.field)
        return den ** (-lam) * f((gi.a * z + gi.b) / den)

    return acted


def pi_action_tensor(l1: int, l2: int, g: MoebiusElement, f: Callable) -> Callable:
    """(varpi_l1(g) tensor varpi_l2(g)) f for a function of two variables."""
    gi = g.inverse()

    def acted(z1, z2):
        d1 = gi.c * z1 + gi.d
        d2 = gi.c * z2 + gi.d
        _check_denominator(d1, gi.field)
        _check_denominator(d2, gi.field)
        return d1 ** (-l1) * d2 ** (-l2) * f((gi.a * z1 + gi.b) / d1, (gi.a * z2 + gi.b) / d2)

    return acted


# ---------------------------------------------------------------------------
# infinitesimal action

def d_pi(lam: int, Z: LieElement, p: UnivariatePoly) -> UnivariatePoly:
    """-lam (p - r z) P - (2 p z + q - r z^2) P'."""
    mult = UnivariatePoly([-lam * Z.p, lam * Z.r], p.field)
    vec = UnivariatePoly([-Z.q, -2 * Z.p, Z.r], p.field)
    return mult * p + vec * p.derivative()


def d_pi_bivariate(lam: int, Z: LieElement, f: BivariatePoly, variable: int) -> BivariatePoly:
    """d varpi_lam(Z) acting on the given variable of f."""
    if variable == 1:
        mult = BivariatePoly({(0, 0): -lam * Z.p, (1, 0): lam * Z.r}, f.field)
        vec = BivariatePoly({(0, 0): -Z.q, (1, 0): -2 * Z.p, (2, 0): Z.r}, f.field)
    else:
        mult = BivariatePoly({(0, 0): -lam * Z.p, (0, 1): lam * Z.r}, f.field)
        vec = BivariatePoly({(0, 0): -Z.q, (0, 1): -2 * Z.p, (0, 2): Z.r}, f.field)
    return mult * f + vec * f.partial_derivative(variable, 1)


def infinitesimal_covariance_residual(w, ell: int, Z: LieElement, f: BivariatePoly) -> UnivariatePoly:
    w = as_weights(w)
    lhs = d_pi(w.output_weight(ell), Z, rc_apply(w, ell, f))
    acted = d_pi_bivariate(w.lambda1, Z, f, 1) + d_pi_bivariate(w.lambda2, Z, f, 2)
    return lhs - rc_apply(w, ell, acted)


# ---------------------------------------------------------------------------
# group action, exact


@lru_cache(maxsize=65536)
def _acted_monomial_taylor(lam, a, b, c, d, z, i, order) -> tuple:
    """Taylor coefficients about z, up to ``order``, of
    (c zeta + d)**(-lam) * ((a zeta + b)/(c zeta + d))**i
    = (a zeta + b)**i * (c zeta + d)**(-lam - i)."""
    num0 = a * z + b
    den0 = c * z + d
    if den0 == 0:
        raise MoebiusPoleError("c z + d = 0")
    m = lam + i
    num = [binomial(i, k) * num0 ** (i - k) * a ** k for k in range(min(i, order) + 1)]
    ratio = c / den0
    den_inv = den0 ** (-m)
    den = [den_inv * ((-1) ** k * binomial(m + k - 1, k)) * ratio ** k for k in range(order + 1)]
    out = []
    for k in range(order + 1):
        acc = GaussianRational(0)
        for s in range(min(k, len(num) - 1) + 1):
            acc = acc + num[s] * den[k - s]
        out.append(acc)
    return tuple(out)


def _acted_derivatives(lam, g_inv: MoebiusElement, z, i, order) -> List[GaussianRational]:
    """k-th derivatives at z, k = 0..order, of varpi_lam(g) applied to zeta**i."""
    coeffs = _acted_monomial_taylor(lam, g_inv.a, g_inv.b, g_inv.c, g_inv.d, z, i, order)
    return [coeffs[k] * factorial(k) for k in range(order + 1)]


def group_covariance_residual(w, ell: int, g: MoebiusElement, f: BivariatePoly, z) -> GaussianRational:
    """(varpi_{l1+l2+2ell}(g) RC f)(z) - RC((varpi_l1(g) x varpi_l2(g)) f)(z), exactly."""
    w = as_weights(w)
    if g.field != EXACT or f.field != EXACT:
        raise TypeError("exact group covariance needs exact g and f")
    z = GaussianRational.coerce(z)
    gi = g.inverse()
    den = gi.c * z + gi.d
    if den == 0:
        raise MoebiusPoleError(f"z = {z} is a pole of the action")
    lhs = den ** (-w.output_weight(ell)) * rc_apply(w, ell, f).evaluate((gi.a * z + gi.b) / den)

    rc = rc_coefficients(w, ell).coeffs
    rhs = GaussianRational(0)
    for (i, j), coeff in f.terms.items():
        d1 = _acted_derivatives(w.lambda1, gi, z, i, ell)
        d2 = _acted_derivatives(w.lambda2, gi, z, j, ell)
        s = GaussianRational(0)
        for k, r in enumerate(rc):
            if r:
                s = s + d1[ell - k] * d2[k] * r
        rhs = rhs + coeff * s
    return lhs - rhs


def phi_cocycle_residual(g: MoebiusElement, z1, z2, z):
    """phi(g.z1, g.z2; g.z) - (c z + d)**2 phi(z1, z2; z)."""
    def _phi(a, b, c):
        return (a - b) / ((a - c) * (b - c))
    lhs = _phi(mobius_apply(g, z1), mobius_apply(g, z2), mobius_apply(g, z))
    return lhs - g.cocycle(z) ** 2 * _phi(z1, z2, z)


# ---------------------------------------------------------------------------
# kernel covariance

def _kernel_Al_generic(w, ell, z1, z2, z):
    u1, u2 = z1 - z, z2 - z
    if u1 == 0 or u2 == 0:
        raise ZeroDivisionError("kernel pole")
    return (z1 - z2) ** (w.lambda1 + w.lambda2 + ell - 2) / (u1 ** (w.lambda2 + ell) * u2 ** (w.lambda1 + ell))


def kernel_covariance_residual(w, ell: int, g: MoebiusElement, z1, z2, z, convention: str = "corrected"):
    """A(g.z1, g.z2; g.z) (c z1 + d)**(l1-2) (c z2 + d)**(e2) - (c z + d)**(l1+l2+2ell) A(z1, z2; z).

    e2 = l2 - 2 for ``corrected`` and l1 - 2 for ``printed``; the two agree when l1 == l2.
    Exact inputs give an exact residual.
    """
    w = as_weights(w)
    if convention not in ("corrected", "printed"):
        raise ValueError(f"unknown convention {convention!r}")
    if g.field == FLOAT:
        z1, z2, z = complex(z1), complex(z2), complex(z)
    else:
        z1, z2, z = (GaussianRational.coerce(x) for x in (z1, z2, z))
    e2 = (w.lambda2 if convention == "corrected" else w.lambda1) - 2
    lhs = _kernel_Al_generic(w, ell, mobius_apply(g, z1), mobius_apply(g, z2), mobius_apply(g, z))
    lhs = lhs * g.cocycle(z1) ** (w.lambda1 - 2) * g.cocycle(z2) ** e2
    rhs = g.cocycle(z) ** w.output_weight(ell) * _kernel_Al_generic(w, ell, z1, z2, z)
    return lhs - rhs


def ah_covariance_residual(w, h: HSeries, g: MoebiusElement, z1, z2, z, t) -> complex:
    """A^(h)(g.z1, g.z2; g.z, t/(cz+d)^2) - (cz+d)^(l1+l2) (c z1+d)^(2-l1) (c z2+d)^(2-l2) A^(h)(z1, z2; z, t)."""
    w = as_weights(w)
    g = g.to_float()
    z1, z2, z, t = complex(z1), complex(z2), complex(z), complex(t)
    jz = g.cocycle(z)
    lhs = kernel_Ah(w, h, mobius_apply(g, z1), mobius_apply(g, z2), mobius_apply(g, z), t / jz ** 2)
    scale = jz ** (w.lambda1 + w.lambda2) * g.cocycle(z1) ** (2 - w.lambda1) * g.cocycle(z2) ** (2 - w.lambda2)
    return lhs - scale * kernel_Ah(w, h, z1, z2, z, t)


# ---------------------------------------------------------------------------
# transform covariance, by quadrature

def transform_covariance_residual(w, ell: int, h: MoebiusElement, f, z, r: float = 1.0, N: int = 64,
                    rtol: float = 1e-11, margin: float = 1.25) -> complex:
    """varpi_{l1+l2+2ell}(h)(T^(ell) f)(z) - T^(ell)((varpi_l1(h) x varpi_l2(h)) f)(z).

    Both sides are independent double contour integrals.  The right side's
    integrand has a pole where the action is singular; the circle about z
    must stay clear of it by the factor ``margin``.
    """
    w = as_weights(w)
    h = h.to_float()
    z = complex(z)
    g = h.inverse()
    fnum = f.numeric() if isinstance(f, BivariatePoly) else f
    if g.c != 0:
        pole = -g.d / g.c
        if abs(z - pole) <= margin * r:
            raise ContourValidityError(
                f"action pole {pole} lies within {margin} x radius of z = {z}"
            )
    jz = g.cocycle(z)
    if abs(jz) < FLOAT_POLE_TOL:
        raise MoebiusPoleError("c z + d = 0 at the evaluation point")
    lhs = jz ** (-w.output_weight(ell)) * transform_Tl(w, ell, fnum, mobius_apply(g, z), r, r, N, rtol)
    acted = pi_action_tensor(w.lambda1, w.lambda2, h, fnum)
    rhs = transform_Tl(w, ell, acted, z, r, r, N, rtol)
    return lhs - rhs
