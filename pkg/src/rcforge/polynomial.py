"""Dense univariate and sparse bivariate polynomials.

Each polynomial lives over one of two coefficient fields:

* ``"exact"``: :class:`~rcforge.exact.GaussianRational` coefficients
  (ints and Fractions are embedded on construction),
* ``"float"``: Python ``complex`` coefficients.

Arithmetic never promotes silently between the two; use
:meth:`UnivariatePoly.to_float` / :meth:`BivariatePoly.to_float`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from .exact import GaussianRational

EXACT = "exact"
FLOAT = "float"


class FieldMismatchError(TypeError):
    pass


def _is_float_scalar(x) -> bool:
    return isinstance(x, (float, complex, np.floating, np.complexfloating))


def _infer_field(values) -> str:
    values = list(values)
    if any(_is_float_scalar(v) for v in values):
        if any(isinstance(v, GaussianRational) for v in values):
            raise FieldMismatchError("mixed exact and floating coefficients")
        return FLOAT
    return EXACT


def _coerce(x, field: str):
    if field == EXACT:
        if _is_float_scalar(x):
            raise FieldMismatchError(f"floating value {x!r} in exact polynomial")
        return GaussianRational.coerce(x)
    if isinstance(x, GaussianRational):
        raise FieldMismatchError("exact value in floating polynomial; convert explicitly")
    return complex(x)


def _zero(field: str):
    return GaussianRational(0) if field == EXACT else 0j


def _is_zero(c) -> bool:
    return c == 0


def _scalar_field(x) -> str | None:
    if isinstance(x, GaussianRational) or isinstance(x, (int, Fraction)):
        return EXACT
    if _is_float_scalar(x):
        return FLOAT
    return None


class UnivariatePoly:
    """Dense polynomial; ``coeffs[k]`` multiplies ``z**k``."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable = (), field: str | None = None):
        coeffs = list(coeffs)
        if field is None:
            field = _infer_field(coeffs)
        cs = [_coerce(c, field) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs: Tuple = tuple(cs)
        self.field = field

    @classmethod
    def zero(cls, field: str = EXACT) -> "UnivariatePoly":
        return cls((), field)

    @classmethod
    def monomial(cls, k: int, coeff=1, field: str = EXACT) -> "UnivariatePoly":
        return cls([0] * k + [coeff], field)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"UnivariatePoly({list(self.coeffs)!r}, field={self.field!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts)

    def __eq__(self, other):
        if isinstance(other, UnivariatePoly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def _check(self, other: "UnivariatePoly"):
        if self.field != other.field:
            raise FieldMismatchError(f"cannot combine {self.field} and {other.field} polynomials")

    def __add__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = _zero(self.field)
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return UnivariatePoly([x + y for x, y in zip(a, b)], self.field)

    def __neg__(self):
        return UnivariatePoly([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UnivariatePoly):
            self._check(other)
            if self.is_zero() or other.is_zero():
                return UnivariatePoly.zero(self.field)
            out = [_zero(self.field)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if _is_zero(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return UnivariatePoly(out, self.field)
        f = _scalar_field(other)
        if f is None:
            return NotImplemented
        s = _coerce(other, self.field)
        return UnivariatePoly([c * s for c in self.coeffs], self.field)

    __rmul__ = __mul__

    def derivative(self, order: int = 1) -> "UnivariatePoly":
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [c * k for k, c in enumerate(cs)][1:]
        return UnivariatePoly(cs, self.field)

    def evaluate(self, z):
        """Horner evaluation.  Exact polynomials evaluated at a float point
        are first embedded into the floating field."""
        if self.field == EXACT and _is_float_scalar(z):
            return self.to_float().evaluate(z)
        if self.field == EXACT:
            z = GaussianRational.coerce(z)
        acc = _zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    __call__ = evaluate

    def to_float(self) -> "UnivariatePoly":
        if self.field == FLOAT:
            return self
        return UnivariatePoly([complex(c) for c in self.coeffs], FLOAT)

    def to_dict(self) -> dict:
        if self.field == EXACT:
            return {"coeffs": [c.to_dict() for c in self.coeffs]}
        return {"coeffs": [{"re": repr(c.real), "im": repr(c.imag)} for c in self.coeffs]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "UnivariatePoly":
        return cls([GaussianRational.from_dict(c) for c in d["coeffs"]], EXACT)


class BivariatePoly:
    """Sparse polynomial in (zeta1, zeta2); ``terms[(i, j)]`` multiplies
    ``zeta1**i * zeta2**j``."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: Mapping[Tuple[int, int], object] | None = None, field: str | None = None):
        terms = dict(terms or {})
        if field is None:
            field = _infer_field(terms.values())
        clean: Dict[Tuple[int, int], object] = {}
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j})")
            c = _coerce(c, field)
            if not _is_zero(c):
                clean[(int(i), int(j))] = c
        self.terms = clean
        self.field = field

    @classmethod
    def zero(cls, field: str = EXACT) -> "BivariatePoly":
        return cls({}, field)

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1, field: str = EXACT) -> "BivariatePoly":
        return cls({(i, j): coeff}, field)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (max((i for i, _ in self.terms), default=-1), max((j for _, j in self.terms), default=-1))

    def __repr__(self):
        return f"BivariatePoly({self.terms!r}, field={self.field!r})"

    def __eq__(self, other):
        if isinstance(other, BivariatePoly):
            return self.field == other.field and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def _check(self, other: "BivariatePoly"):
        if self.field != other.field:
            raise FieldMismatchError(f"cannot combine {self.field} and {other.field} polynomials")

    def __add__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return BivariatePoly(out, self.field)

    def __neg__(self):
        return BivariatePoly({k: -c for k, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BivariatePoly):
            self._check(other)
            out: Dict[Tuple[int, int], object] = {}
            for (i1, j1), a in self.terms.items():
                for (i2, j2), b in other.terms.items():
                    k = (i1 + i2, j1 + j2)
                    out[k] = out[k] + a * b if k in out else a * b
            return BivariatePoly(out, self.field)
        if _scalar_field(other) is None:
            return NotImplemented
        s = _coerce(other, self.field)
        return BivariatePoly({k: c * s for k, c in self.terms.items()}, self.field)

    __rmul__ = __mul__

    def swap(self) -> "BivariatePoly":
        """f(zeta2, zeta1)."""
        return BivariatePoly({(j, i): c for (i, j), c in self.terms.items()}, self.field)

    def partial_derivative(self, variable: int, order: int = 1) -> "BivariatePoly":
        if variable not in (1, 2):
            raise ValueError("variable must be 1 or 2")
        if order < 0:
            raise ValueError("order must be nonnegative")
        if order == 0:
            return self
        out = {}
        for (i, j), c in self.terms.items():
            e = i if variable == 1 else j
            if e < order:
                continue
            falling = 1
            for k in range(order):
                falling *= e - k
            key = (i - order, j) if variable == 1 else (i, j - order)
            out[key] = c * falling
        return BivariatePoly(out, self.field)

    def restrict_diagonal(self) -> UnivariatePoly:
        deg = self.total_degree
        if deg < 0:
            return UnivariatePoly.zero(self.field)
        out = [_zero(self.field)] * (deg + 1)
        for (i, j), c in self.terms.items():
            out[i + j] = out[i + j] + c
        return UnivariatePoly(out, self.field)

    def evaluate(self, z1, z2):
        if self.field == EXACT and (_is_float_scalar(z1) or _is_float_scalar(z2)):
            return self.to_float().evaluate(z1, z2)
        if self.field == EXACT:
            z1, z2 = GaussianRational.coerce(z1), GaussianRational.coerce(z2)
        # Horner in zeta1 over coefficient polynomials in zeta2
        rows: Dict[int, Dict[int, object]] = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(i, {})[j] = c
        acc = _zero(self.field)
        for i in range(max(rows, default=-1), -1, -1):
            inner = _zero(self.field)
            row = rows.get(i, {})
            for j in range(max(row, default=-1), -1, -1):
                inner = inner * z2 + row.get(j, _zero(self.field))
            acc = acc * z1 + inner
        return acc

    __call__ = evaluate

    def to_float(self) -> "BivariatePoly":
        if self.field == FLOAT:
            return self
        return BivariatePoly({k: complex(c) for k, c in self.terms.items()}, FLOAT)

    def numeric(self):
        """Vectorised evaluator ``(Z1, Z2) -> array`` for numpy inputs that
        broadcast against each other."""
        items = [(i, j, complex(c)) for (i, j), c in sorted(self.terms.items())]

        def f(z1, z2):
            z1 = np.asarray(z1, dtype=complex)
            z2 = np.asarray(z2, dtype=complex)
            shape = np.broadcast_shapes(z1.shape, z2.shape)
            acc = np.zeros(shape, dtype=complex)
            if not items:
                return acc
            p1 = {}
            p2 = {}
            for i, j, c in items:
                if i not in p1:
                    p1[i] = z1 ** i
                if j not in p2:
                    p2[j] = z2 ** j
                acc = acc + c * p1[i] * p2[j]
            return acc

        return f

    def to_dict(self) -> dict:
        if self.field != EXACT:
            raise FieldMismatchError("only exact polynomials serialise")
        return {
            "terms": [
                {"i": i, "j": j, **c.to_dict()} for (i, j), c in sorted(self.terms.items())
            ]
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "BivariatePoly":
        terms: Dict[Tuple[int, int], GaussianRational] = {}
        for t in d["terms"]:
            key = (int(t["i"]), int(t["j"]))
            c = GaussianRational.from_dict(t)
            terms[key] = terms[key] + c if key in terms else c
        return cls(terms, EXACT)


# Module-level forms of the core operations.

def partial_derivative(p: BivariatePoly, variable: int, order: int) -> BivariatePoly:
    return p.partial_derivative(variable, order)


def restrict_diagonal(p: BivariatePoly) -> UnivariatePoly:
    return p.restrict_diagonal()


def evaluate(p, *point):
    if isinstance(p, UnivariatePoly):
        (z,) = point
        return p.evaluate(z)
    return p.evaluate(*point)


ZETA1 = BivariatePoly({(1, 0): 1})
ZETA2 = BivariatePoly({(0, 1): 1})
