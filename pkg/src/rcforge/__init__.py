"""Rankin-Cohen brackets, their contour-integral reconstruction and
generating operators, with exact and quadrature-based identity checks."""

from .brackets import RCCoefficients, WeightPair, rc_apply, rc_coefficients, scaling_constant
from .exact import GaussianRational, PiPower
from .polynomial import BivariatePoly, UnivariatePoly

__version__ = "0.1.0"

__all__ = [
    "BivariatePoly",
    "GaussianRational",
    "PiPower",
    "RCCoefficients",
    "UnivariatePoly",
    "WeightPair",
    "rc_apply",
    "rc_coefficients",
    "scaling_constant",
]
