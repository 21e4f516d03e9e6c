"""Normalising constants c_l, r_l, a_l of the unitary generating operator,
their lambda -> 1 limit, large-l asymptotics and the convergence-radius
estimator for a normalising sequence.

Integer weights go through exact factorial arithmetic; real weights and
large l go through log-Gamma so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Union

from .exact import PiPower, double_factorial, factorial, log_gamma

LN2 = math.log(2.0)
LNPI = math.log(math.pi)
RADIUS_ZERO_THRESHOLD = 30.0

Number = Union[int, float]


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _weights(w):
    if hasattr(w, "lambda1"):
        return w.lambda1, w.lambda2
    l1, l2 = w
    return l1, l2


@dataclass(frozen=True)
class ConstantsRow:
    ell: int
    c: Union[Fraction, float]
    r: Union[PiPower, float]
    a_squared: Union[PiPower, float]
    a_float: float

    @property
    def exact(self) -> bool:
        return isinstance(self.c, Fraction)


def c_ell(w, ell: int):
    """Gamma(l1+l)Gamma(l2+l) / ((l1+l2+2l-1) Gamma(l1+l2+l-1) l!)."""
    l1, l2 = _weights(w)
    if _is_int(l1) and _is_int(l2):
        if l1 < 1 or l2 < 1:
            raise ValueError("integer weights must be >= 1")
        return Fraction(
            factorial(l1 + ell - 1) * factorial(l2 + ell - 1),
            (l1 + l2 + 2 * ell - 1) * factorial(l1 + l2 + ell - 2) * factorial(ell),
        )
    return math.exp(log_c_ell(l1, l2, ell))


def log_c_ell(l1: float, l2: float, ell: int) -> float:
    return (
        log_gamma(l1 + ell) + log_gamma(l2 + ell)
        - math.log(l1 + l2 + 2 * ell - 1) - log_gamma(l1 + l2 + ell - 1) - log_gamma(ell + 1)
    )


def r_ell(w, ell: int):
    """Gamma(l1+l2+2l-1) / (2^(2l+2) pi Gamma(l1-1) Gamma(l2-1)); exact times 1/pi
    for integer weights >= 2."""
    l1, l2 = _weights(w)
    if not (l1 > 1 and l2 > 1):
        raise ValueError(f"r_ell needs l1, l2 > 1 (Gamma pole), got ({l1}, {l2})")
    if _is_int(l1) and _is_int(l2):
        coeff = Fraction(
            factorial(l1 + l2 + 2 * ell - 2),
            2 ** (2 * ell + 2) * factorial(l1 - 2) * factorial(l2 - 2),
        )
        return PiPower(coeff, -1)
    return math.exp(log_r_ell(l1, l2, ell))


def log_r_ell(l1: float, l2: float, ell: int) -> float:
    if not (l1 > 1 and l2 > 1):
        raise ValueError("r_ell needs l1, l2 > 1")
    return (
        log_gamma(l1 + l2 + 2 * ell - 1) - (2 * ell + 2) * LN2 - LNPI
        - log_gamma(l1 - 1) - log_gamma(l2 - 1)
    )


def log_a_ell(l1: float, l2: float, ell: int) -> float:
    return -0.5 * (log_c_ell(l1, l2, ell) + log_r_ell(l1, l2, ell))


def a_ell(w, ell: int) -> ConstantsRow:
    """a_l = (c_l r_l)^(-1/2) with a_l^2 exact (rational times pi) for integer weights."""
    l1, l2 = _weights(w)
    if _is_int(l1) and _is_int(l2):
        c = c_ell((l1, l2), ell)
        r = r_ell((l1, l2), ell)
        a2 = (r * c).inverse()
        return ConstantsRow(ell, c, r, a2, math.sqrt(float(a2)))
    lc, lr = log_c_ell(l1, l2, ell), log_r_ell(l1, l2, ell)
    return ConstantsRow(ell, math.exp(lc), math.exp(lr), math.exp(-(lc + lr)), math.exp(-0.5 * (lc + lr)))


def a_ell_11_squared(ell: int) -> PiPower:
    """2^(l+2) pi (2l+1) / (l! (2l-1)!!)."""
    return PiPower(Fraction(2 ** (ell + 2) * (2 * ell + 1), factorial(ell) * double_factorial(2 * ell - 1)), 1)


def log_a_ell_11(ell: int) -> float:
    log_dfact = log_gamma(2 * ell + 1) - ell * LN2 - log_gamma(ell + 1)  # ln (2l-1)!!
    return 0.5 * ((ell + 2) * LN2 + LNPI + math.log(2 * ell + 1) - log_gamma(ell + 1) - log_dfact)


def a_ell_11(ell: int):
    """(a_l(1,1)^2 exact, a_l(1,1) as float)."""
    a2 = a_ell_11_squared(ell)
    return a2, math.exp(log_a_ell_11(ell))


def limit_check_11(ell: int, epsilon: float):
    """eps * a_l(1+eps, 1+eps) against the closed form of the lambda -> 1 limit,
    approaching along the diagonal."""
    if not 0 < epsilon <= 1e-3:
        raise ValueError("epsilon must lie in (0, 1e-3]")
    lam = 1.0 + epsilon
    numeric = math.exp(math.log(epsilon) + log_a_ell(lam, lam, ell))
    return numeric, math.exp(log_a_ell_11(ell))


def log_unitary_a(w, ell: int) -> float:
    l1, l2 = _weights(w)
    if (l1, l2) == (1, 1):
        return log_a_ell_11(ell)
    return log_a_ell(l1, l2, ell)


def log_closed_form_a(w, ell: int) -> float:
    l1, l2 = _weights(w)
    return log_gamma(l1 + l2 + ell - 1) - log_gamma(l1 + ell) - log_gamma(l2 + ell)


def asymptotic_ratio(w, ell: int) -> float:
    """(a_l l!)^(1/l) for the unitary constants, in log space."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return math.exp((log_unitary_a(w, ell) + log_gamma(ell + 1)) / ell)


@dataclass(frozen=True)
class RadiusEstimate:
    inverse_radius: float
    radius: float
    radius_zero: bool
    L: int


def _log_provider(kind: str, w=None) -> Callable[[int], float]:
    if kind == "unit":
        return lambda ell: 0.0
    if kind == "closed_form":
        return lambda ell: log_closed_form_a(w, ell)
    if kind == "unitary":
        return lambda ell: log_unitary_a(w, ell)
    raise ValueError(f"unknown sequence {kind!r}")


def radius_estimate(kind: str, L: int, w=(1, 1)) -> RadiusEstimate:
    """Estimate 1/rho = limsup (|a_l| l!)^(1/l) by its value at l = L."""
    if L < 50:
        raise ValueError("L must be >= 50")
    inv = math.exp((_log_provider(kind, w)(L) + log_gamma(L + 1)) / L)
    zero = inv > RADIUS_ZERO_THRESHOLD
    return RadiusEstimate(inv, 0.0 if zero else 1.0 / inv, zero, L)


def a_sequence(kind: str, w, L: int) -> List[float]:
    """a_0..a_L as floats for the named normalisation."""
    if kind == "unit":
        return [1.0] * (L + 1)
    if kind == "closed_form":
        l1, l2 = _weights(w)
        return [float(Fraction(factorial(l1 + l2 + k - 2), factorial(l1 + k - 1) * factorial(l2 + k - 1)))
                for k in range(L + 1)]
    if kind == "unitary":
        l1, l2 = _weights(w)
        if (l1, l2) == (1, 1):
            return [a_ell_11(k)[1] for k in range(L + 1)]
        return [a_ell((l1, l2), k).a_float for k in range(L + 1)]
    raise ValueError(f"unknown sequence {kind!r}")


def constants_table(w, lmax: int) -> List[ConstantsRow]:
    return [a_ell(w, ell) for ell in range(lmax + 1)]
