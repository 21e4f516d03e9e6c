"""Contour-integral transforms that rebuild the Rankin-Cohen brackets.

All integrals are over circles centred at the evaluation point ``z`` and are
computed with the trapezoidal rule in the angle, which converges
geometrically for integrands holomorphic on an annulus around the circle
(and is exact once the node count exceeds the Laurent degree of a
polynomial integrand).  Sums are accumulated with :func:`math.fsum` in a
fixed node order, so results are reproducible bit for bit.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .brackets import WeightPair, as_weights, closed_form_constant
from .polynomial import BivariatePoly

DEFAULT_NODES = 64
DEFAULT_RTOL = 1e-11
DEFAULT_T_NODES = 32
HSERIES_TRUST = 0.5
_BLOCK_ROWS = 256


class QuadratureError(ArithmeticError):
    pass


class NonFiniteSampleError(QuadratureError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ConvergenceError(QuadratureError):
    def __init__(self, message, last_delta=None, nodes=None):
        super().__init__(message)
        self.last_delta = last_delta
        self.nodes = nodes


class PoleError(ZeroDivisionError):
    pass


class AdmissibilityError(ValueError):
    pass


class TrustRegionError(ValueError):
    pass


class DomainError(ValueError):
    pass


def max_nodes() -> int:
    """Node cap for adaptive doubling, overridable through RCFORGE_MAX_NODES."""
    raw = os.environ.get("RCFORGE_MAX_NODES")
    if not raw:
        return 8192
    n = int(raw)
    if n < 16:
        raise ValueError("RCFORGE_MAX_NODES must be >= 16")
    return n


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class Contour:
    center: complex
    radius: float
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"contour radius must be positive and finite, got {self.radius}")
        if self.nodes < 16 or not _is_power_of_two(self.nodes):
            raise ValueError(f"node count must be a power of two >= 16, got {self.nodes}")

    def offsets(self) -> np.ndarray:
        """zeta_k - center for k = 0..N-1."""
        return self.radius * _unit_roots(self.nodes)

    def points(self) -> np.ndarray:
        return self.center + self.offsets()


def _unit_roots(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


@dataclass(frozen=True)
class QuadResult:
    value: complex
    nodes: int
    est_error: float
    mass: float


def _csum(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real.ravel()), math.fsum(values.imag.ravel()))


def contour_integrate(f: Callable[[complex], complex], c: Contour) -> complex:
    """(1/2 pi i) times the integral of f over the circle ``c``."""
    u = c.offsets()
    samples = np.empty(c.nodes, dtype=complex)
    for k, uk in enumerate(u):
        v = complex(f(c.center + uk))
        if not cmath.isfinite(v):
            raise NonFiniteSampleError(f"non-finite sample at node {k}", index=k)
        samples[k] = v
    return _csum(samples * u / c.nodes)


def cauchy_coefficient(f: Callable[[complex], complex], center: complex, order: int, c: Contour) -> complex:
    """Coefficient of (zeta - center)**order in the expansion of f about ``center``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    center = complex(center)
    return contour_integrate(lambda zeta: f(zeta) / (zeta - center) ** (order + 1), c)


# ---------------------------------------------------------------------------
# kernels

@dataclass(frozen=True)
class HSeries:
    """Truncated power series h(s) = sum h_l s**l."""

    coefficients: Tuple[complex, ...]

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coefficients)
        if not cs:
            raise ValueError("HSeries needs at least one coefficient")
        object.__setattr__(self, "coefficients", cs)

    @property
    def L(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, s):
        acc = 0j if np.ndim(s) == 0 else np.zeros(np.shape(s), dtype=complex)
        for c in reversed(self.coefficients):
            acc = acc * s + c
        return acc

    @classmethod
    def geometric(cls, w, L: int) -> "HSeries":
        """Truncation of (-1)**(l1-1) / (1 + s), the series behind the
        closed-form kernel."""
        w = as_weights(w)
        s0 = -1 if (w.lambda1 - 1) % 2 else 1
        return cls(tuple(s0 * (-1) ** k for k in range(L + 1)))


def hseries_from_a(w, a_seq: Sequence, convention: str = "corrected") -> HSeries:
    """Kernel series whose transform has t**l coefficient a_l * RC^(l).

    ``corrected`` uses h_l = (-1)**(l1+l-1) a_l / C_l with
    C_l = (l1+l2+l-2)!/((l1+l-1)!(l2+l-1)!); ``printed`` drops the sign, which
    leaves a residual sign (-1)**(l1+l-1) on each coefficient.
    """
    w = as_weights(w)
    if convention not in ("corrected", "printed"):
        raise ValueError(f"unknown convention {convention!r}")
    hs = []
    for ell, a in enumerate(a_seq):
        h = complex(a) / float(closed_form_constant(w, ell))
        if convention == "corrected" and (w.lambda1 + ell - 1) % 2:
            h = -h
        hs.append(h)
    return HSeries(tuple(hs))


def _check_pole(z1, z2, z, eps):
    for k, zeta in enumerate((z1, z2), start=1):
        if abs(zeta - z) <= eps:
            raise PoleError(f"zeta{k} = {zeta} is within {eps:g} of the pole z = {z}")


def kernel_Al(w, ell: int, z1, z2, z, eps: float = 1e-12) -> complex:
    """(z1 - z2)**(l1+l2+ell-2) / ((z1 - z)**(l2+ell) (z2 - z)**(l1+ell))."""
    w = as_weights(w)
    z1, z2, z = complex(z1), complex(z2), complex(z)
    _check_pole(z1, z2, z, eps)
    return _grid_Al(w, ell, z1 - z, z2 - z)


def kernel_A(w, z1, z2, z, t, eps: float = 1e-12) -> complex:
    """Closed-form generating kernel; integer exponents only, so no branch cuts."""
    w = as_weights(w)
    z1, z2, z, t = complex(z1), complex(z2), complex(z), complex(t)
    _check_pole(z1, z2, z, eps)
    u1, u2 = z1 - z, z2 - z
    denom = u1 * u2 + t * (u1 - u2)
    if abs(denom) <= eps * max(1.0, abs(u1 * u2)):
        raise PoleError(f"kernel denominator {denom} vanishes at zeta=({z1}, {z2}), z={z}, t={t}")
    return _grid_A(w, t, u1, u2)


def phi(z1, z2, z):
    return (z1 - z2) / ((z1 - z) * (z2 - z))


def kernel_Ah(w, h: HSeries, z1, z2, z, t, eps: float = 1e-12, trust: float = HSERIES_TRUST) -> complex:
    w = as_weights(w)
    z1, z2, z, t = complex(z1), complex(z2), complex(z), complex(t)
    _check_pole(z1, z2, z, eps)
    s = t * phi(z1, z2, z)
    if abs(s) > trust:
        raise TrustRegionError(f"|t*phi| = {abs(s):.3g} exceeds the series trust region {trust}")
    return _grid_Ah(w, h, t, z1 - z, z2 - z)


# Vectorised kernels on offsets u_k = zeta_k - z.

def _grid_Al(w: WeightPair, ell: int, u1, u2):
    l1, l2 = w.lambda1, w.lambda2
    return (u1 - u2) ** (l1 + l2 + ell - 2) / (u1 ** (l2 + ell) * u2 ** (l1 + ell))


def _grid_A(w: WeightPair, t: complex, u1, u2):
    l1, l2 = w.lambda1, w.lambda2
    num = (u1 - u2) ** (l1 + l2 - 2) * u1 ** (1 - l2) * (-u2) ** (1 - l1)
    return num / (u1 * u2 + t * (u1 - u2))


def _grid_Ah(w: WeightPair, h: HSeries, t: complex, u1, u2):
    l1, l2 = w.lambda1, w.lambda2
    pref = (u1 - u2) ** (l1 + l2 - 2) / (u1 ** l2 * u2 ** l1)
    return pref * h(t * (u1 - u2) / (u1 * u2))


# ---------------------------------------------------------------------------
# double contour integrals

def _as_callable(f):
    if isinstance(f, BivariatePoly):
        return f.numeric()
    return f


def _double_integral(kernel, f, z: complex, r1: float, r2: float, n: int) -> Tuple[complex, float]:
    u1 = r1 * _unit_roots(n)
    u2 = r2 * _unit_roots(n)
    w2 = (u2 / n)[None, :]
    re_parts, im_parts, mass_parts = [], [], []
    for start in range(0, n, _BLOCK_ROWS):
        U1 = u1[start:start + _BLOCK_ROWS, None]
        U2 = u2[None, :]
        vals = kernel(U1, U2) * f(z + U1, z + U2) * (U1 / n) * w2
        vals = np.broadcast_to(vals, (U1.shape[0], n))
        finite = np.isfinite(vals)
        if not finite.all():
            i, j = np.argwhere(~finite)[0]
            raise NonFiniteSampleError(
                f"non-finite integrand at node ({start + i}, {j})", index=(int(start + i), int(j))
            )
        re_parts.append(math.fsum(vals.real.ravel()))
        im_parts.append(math.fsum(vals.imag.ravel()))
        mass_parts.append(math.fsum(np.abs(vals).ravel()))
    return complex(math.fsum(re_parts), math.fsum(im_parts)), math.fsum(mass_parts)


def _adaptive(kernel, f, z, r1, r2, n0: int, rtol: float, nmax: Optional[int]) -> QuadResult:
    nmax = max_nodes() if nmax is None else nmax
    if n0 < 16 or not _is_power_of_two(n0):
        raise ValueError(f"initial node count must be a power of two >= 16, got {n0}")
    f = _as_callable(f)
    n = n0
    prev, _ = _double_integral(kernel, f, z, r1, r2, n)
    delta = math.inf
    while 2 * n <= nmax:
        n *= 2
        val, mass = _double_integral(kernel, f, z, r1, r2, n)
        delta = abs(val - prev)
        # convergence measured against the larger of |value| and the summed
        # magnitude, which is the floor set by rounding in the samples
        if delta <= rtol * max(abs(val), mass):
            return QuadResult(val, n, delta, mass)
        prev = val
    raise ConvergenceError(
        f"no convergence up to {n} nodes (last delta {delta:.3e})", last_delta=delta, nodes=n
    )


def _radii(r1, r2):
    r1 = float(r1)
    r2 = r1 if r2 is None else float(r2)
    if not (r1 > 0 and r2 > 0):
        raise ValueError("contour radii must be positive")
    return r1, r2


def transform_Tl(w, ell: int, f, z, r1: float = 1.0, r2: float | None = None, N: int = DEFAULT_NODES,
                 rtol: float = DEFAULT_RTOL, nmax: int | None = None, full_output: bool = False):
    """(1/2 pi i)^2 double integral of A^(ell) f around z."""
    w = as_weights(w)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    r1, r2 = _radii(r1, r2)
    res = _adaptive(lambda u1, u2: _grid_Al(w, ell, u1, u2), f, complex(z), r1, r2, N, rtol, nmax)
    return (res.value, res) if full_output else res.value


def check_admissible(t, r1: float, r2: float):
    if not abs(t) * (r1 + r2) < r1 * r2:
        raise AdmissibilityError(
            f"|t|(r1+r2) = {abs(t) * (r1 + r2):.6g} must be < r1*r2 = {r1 * r2:.6g}"
        )


def transform_T(w, f, z, t, r1: float = 1.0, r2: float | None = None, N: int = DEFAULT_NODES,
                rtol: float = DEFAULT_RTOL, nmax: int | None = None, full_output: bool = False):
    """Closed-form generating operator evaluated at (z, t)."""
    w = as_weights(w)
    r1, r2 = _radii(r1, r2)
    t = complex(t)
    check_admissible(t, r1, r2)
    res = _adaptive(lambda u1, u2: _grid_A(w, t, u1, u2), f, complex(z), r1, r2, N, rtol, nmax)
    return (res.value, res) if full_output else res.value


def check_trust(t, r1: float, r2: float, trust: float = HSERIES_TRUST):
    worst = abs(t) * (r1 + r2) / (r1 * r2)
    if worst > trust:
        raise TrustRegionError(f"max |t*phi| on the contours is {worst:.4g} > {trust}")


def transform_Th(w, h: HSeries, f, z, t, r1: float = 1.0, r2: float | None = None, N: int = DEFAULT_NODES,
                 rtol: float = DEFAULT_RTOL, nmax: int | None = None, full_output: bool = False):
    """Generating operator built from an arbitrary kernel series h."""
    w = as_weights(w)
    r1, r2 = _radii(r1, r2)
    t = complex(t)
    check_admissible(t, r1, r2)
    check_trust(t, r1, r2)
    res = _adaptive(lambda u1, u2: _grid_Ah(w, h, t, u1, u2), f, complex(z), r1, r2, N, rtol, nmax)
    return (res.value, res) if full_output else res.value


def taylor_in_t(w, f, z, K: int, rho_t: float, r1: float = 1.0, r2: float | None = None,
                N: int = DEFAULT_NODES, h: HSeries | None = None, t_nodes: int = DEFAULT_T_NODES,
                rtol: float = DEFAULT_RTOL, full_output: bool = False):
    """Taylor coefficients t**0..t**K of the generating operator at z.

    The t-circle |t| = rho_t is sampled at ``t_nodes`` points, doubled until
    the coefficients stop moving; earlier samples are reused since the
    node sets are nested.  With ``h`` given, T^(h) replaces the closed-form
    operator.
    """
    w = as_weights(w)
    r1, r2 = _radii(r1, r2)
    if K < 0:
        raise ValueError("K must be nonnegative")
    if not rho_t > 0:
        raise ValueError("rho_t must be positive")
    check_admissible(rho_t, r1, r2)
    if h is not None:
        check_trust(rho_t, r1, r2)
    M = max(t_nodes, 16)
    while M <= K:
        M *= 2
    if not _is_power_of_two(M):
        raise ValueError("t_nodes must be a power of two")
    f = _as_callable(f)

    def value_at(t):
        if h is None:
            return transform_T(w, f, z, t, r1, r2, N, rtol)
        return transform_Th(w, h, f, z, t, r1, r2, N, rtol)

    samples = {}

    def coeffs_for(m):
        vals = np.empty(m, dtype=complex)
        for k in range(m):
            idx = Fraction(k, m)
            if idx not in samples:
                samples[idx] = value_at(rho_t * cmath.exp(2j * math.pi * k / m))
            vals[k] = samples[idx]
        out = []
        roots = _unit_roots(m)
        for j in range(K + 1):
            out.append(_csum(vals * roots ** (-j) / m) / rho_t ** j)
        return np.array(out), max(abs(v) for v in vals)

    cur, scale = coeffs_for(M)
    nmax = max_nodes()
    while True:
        if 2 * M > nmax:
            raise ConvergenceError(f"t-circle sampling did not converge by {M} nodes", nodes=M)
        nxt, scale = coeffs_for(2 * M)
        M *= 2
        delta = max(abs(a - b) * rho_t ** j for j, (a, b) in enumerate(zip(nxt, cur)))
        if delta <= 10 * rtol * max(scale, 1e-300):
            result = [complex(c) for c in nxt]
            if full_output:
                return result, {"t_nodes": M, "est_error": delta}
            return result
        cur = nxt


# ---------------------------------------------------------------------------
# domains

@dataclass(frozen=True)
class DomainDescriptor:
    kind: str
    center: complex = 0j
    radius: float = math.inf

    def __post_init__(self):
        if self.kind not in ("whole-plane", "upper-half-plane", "disk"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "disk" and not self.radius > 0:
            raise ValueError("disk radius must be positive")

    @classmethod
    def whole_plane(cls):
        return cls("whole-plane")

    @classmethod
    def upper_half_plane(cls):
        return cls("upper-half-plane")

    @classmethod
    def disk(cls, center, radius):
        return cls("disk", complex(center), float(radius))

    def contains(self, z) -> bool:
        return self.boundary_distance_unchecked(complex(z)) > 0

    def boundary_distance_unchecked(self, z: complex) -> float:
        if self.kind == "whole-plane":
            return math.inf
        if self.kind == "upper-half-plane":
            return z.imag
        return self.radius - abs(z - self.center)

    def boundary_distance(self, z) -> float:
        z = complex(z)
        d = self.boundary_distance_unchecked(z)
        if not d > 0:
            raise DomainError(f"{z} is not in the {self.kind} domain")
        return d


def in_UD(z, t, D: DomainDescriptor) -> bool:
    """Whether (z, t) lies in U_D = {2|t| < d(z, boundary)}."""
    d = D.boundary_distance(z)
    return 2 * abs(complex(t)) < d


def default_radius(z, D: DomainDescriptor) -> float:
    d = D.boundary_distance(z)
    return 1.0 if math.isinf(d) else 0.8 * d
