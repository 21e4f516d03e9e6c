"""Exact arithmetic: rationals, Gaussian rationals, pi-power constants and
the combinatorial primitives used by the bracket and constant modules.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  :class:`GaussianRational` adds an imaginary part on top.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "GaussianRational",
    "PiPower",
    "as_fraction",
    "factorial",
    "binomial",
    "double_factorial",
    "pochhammer",
    "log_gamma",
    "fraction_to_str",
    "fraction_from_str",
]


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or decimal/ratio string to a Fraction.

    Floats are accepted only when they are integral; anything else would
    silently import rounding error into an exact computation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise TypeError(f"cannot use {x!r} ({type(x).__name__}) as an exact rational")


def fraction_to_str(q: Fraction) -> str:
    """Canonical ``p/q`` form; the denominator is always written."""
    return f"{q.numerator}/{q.denominator}"


def fraction_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(as_fraction(x), 0)

    @classmethod
    def from_dict(cls, d: dict) -> "GaussianRational":
        return cls(fraction_from_str(str(d.get("re", "0"))), fraction_from_str(str(d.get("im", "0"))))

    def to_dict(self) -> dict:
        return {"re": fraction_to_str(self.re), "im": fraction_to_str(self.im)}

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    # comparisons / hashing

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    # arithmetic

    def _other(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.im == 0:
            return GaussianRational(self.re * o.re, self.im * o.re)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.im == 0:
            if o.re == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / o.re, self.im / o.re)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __complex__(self):
        return complex(float(self.re), float(self.im))


class PiPower:
    """Exact value ``coefficient * pi**exponent`` with a half-integer exponent."""

    __slots__ = ("coefficient", "pi_exponent")

    def __init__(self, coefficient, pi_exponent=0):
        e = as_fraction(pi_exponent)
        if (2 * e).denominator != 1:
            raise ValueError(f"pi exponent must be an integer or half-integer, got {e}")
        object.__setattr__(self, "coefficient", as_fraction(coefficient))
        object.__setattr__(self, "pi_exponent", e)

    def __setattr__(self, name, value):
        raise AttributeError("PiPower is immutable")

    def __repr__(self):
        return f"PiPower({self.coefficient}, {self.pi_exponent})"

    def __str__(self):
        e = self.pi_exponent
        if e == 0:
            return fraction_to_str(self.coefficient)
        return f"{fraction_to_str(self.coefficient)}*pi^{e}"

    def __eq__(self, other):
        if isinstance(other, PiPower):
            if self.coefficient == 0 and other.coefficient == 0:
                return True
            return self.coefficient == other.coefficient and self.pi_exponent == other.pi_exponent
        if isinstance(other, (int, Fraction)):
            return self == PiPower(other, 0)
        return NotImplemented

    def __hash__(self):
        return hash((self.coefficient, self.pi_exponent))

    def __mul__(self, other):
        if isinstance(other, PiPower):
            return PiPower(self.coefficient * other.coefficient, self.pi_exponent + other.pi_exponent)
        if isinstance(other, (int, Fraction)):
            return PiPower(self.coefficient * other, self.pi_exponent)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "PiPower":
        if self.coefficient == 0:
            raise ZeroDivisionError("PiPower inverse of zero")
        return PiPower(1 / self.coefficient, -self.pi_exponent)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiPower(other, 0)
        if not isinstance(other, PiPower):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return PiPower(other, 0) * self.inverse()
        return NotImplemented

    def sqrt(self) -> "PiPower":
        """Exact square root; only defined when the coefficient is a rational square."""
        q = self.coefficient
        if q < 0:
            raise ValueError("square root of a negative PiPower")
        p_root, d_root = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if p_root * p_root != q.numerator or d_root * d_root != q.denominator:
            raise ValueError(f"{q} is not a rational square")
        return PiPower(Fraction(p_root, d_root), self.pi_exponent / 2)

    def __float__(self):
        return float(self.coefficient) * math.pi ** float(self.pi_exponent)

    def to_str(self) -> str:
        return str(self)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def double_factorial(n: int) -> int:
    if n < -1:
        raise ValueError("double factorial defined for n >= -1")
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def pochhammer(x, n: int):
    """Rising factorial x (x+1) ... (x+n-1); exact for rational x."""
    if n < 0:
        raise ValueError("pochhammer requires n >= 0")
    if not isinstance(x, (GaussianRational, float, complex)):
        x = as_fraction(x)
    result = Fraction(1) if isinstance(x, Fraction) else 1
    for k in range(n):
        result = result * (x + k)
    return result


def log_gamma(x: float) -> float:
    """ln Gamma(x) for real x > 0."""
    x = float(x)
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)
