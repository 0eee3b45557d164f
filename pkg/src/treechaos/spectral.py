"""Closed-form spectral objects of the tree Laplacian.

Everything here is a scalar formula: the eigenvalue map gamma, the c-function,
the spherical functions, the L^p strip and spectral ellipse, the chaos
threshold, and the Plancherel density.  All complex powers of q use the
principal branch exp(w*log q) with real log q.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ExponentOutOfRange, PoleAtHalfPeriod
from .tree import TreeParams

# Distances below which we refuse the generic branch / the c-function.
POLE_TOL = 1e-9
BRANCH_TOL = 1e-6
_CLASSIFY_TOL = 1e-12


def qpow(w: complex, params: TreeParams) -> complex:
    """q**w on the principal branch."""
    return cmath.exp(complex(w) * params.log_q)


def canonical_z(z: complex, params: TreeParams) -> complex:
    """Reduce Re z modulo the period tau into [-tau/2, tau/2)."""
    tau = params.tau
    z = complex(z)
    k = math.floor((z.real + tau / 2.0) / tau)
    return complex(z.real - k * tau, z.imag)


@dataclass(frozen=True, slots=True)
class SpectralPoint:
    """Canonical spectral parameter with Re z in [-tau/2, tau/2)."""

    z: complex

    @classmethod
    def of(cls, z: complex, params: TreeParams) -> "SpectralPoint":
        return cls(canonical_z(z, params))


def gamma(z: complex, params: TreeParams) -> complex:
    """Eigenvalue map: 1 - (q^(1/2+iz) + q^(1/2-iz)) / (q+1).

    Even and tau-periodic in z.
    """
    iz = 1j * complex(z)
    return 1.0 - (qpow(0.5 + iz, params) + qpow(0.5 - iz, params)) / (params.q + 1)


def _half_period_distance(z: complex, params: TreeParams) -> float:
    half = params.tau / 2.0
    m = round(complex(z).real / half)
    return abs(complex(z) - m * half)


def c_function(z: complex, params: TreeParams) -> complex:
    """Harish-Chandra type coefficient in the generic spherical expansion.

    Meromorphic with poles on the half-period lattice (tau/2)*Z.
    """
    if _half_period_distance(z, params) < POLE_TOL:
        raise PoleAtHalfPeriod(f"c-function pole within {POLE_TOL} of z={z}")
    q = params.q
    iz = 1j * complex(z)
    num = qpow(0.5 + iz, params) - qpow(-0.5 - iz, params)
    den = qpow(iz, params) - qpow(-iz, params)
    return (math.sqrt(q) / (q + 1)) * num / den


def phi(z: complex, n: int, params: TreeParams) -> complex:
    """Spherical function at distance n.

    Three branches: the half-period lattice points use the polynomial-times-
    q^(-n/2) formulas, everything else the two-exponential c-function form.
    Within BRANCH_TOL of a lattice point the special branch is used, since the
    generic branch is numerically singular there.
    """
    if n < 0:
        raise ValueError("distance must be >= 0")
    q = params.q
    half = params.tau / 2.0
    m = round(complex(z).real / half)
    if abs(complex(z) - m * half) < BRANCH_TOL:
        base = ((q - 1) / (q + 1) * n + 1.0) * qpow(-n / 2.0, params)
        if m % 2 == 0:
            return base
        return base * (-1) ** n
    iz = 1j * complex(z)
    return c_function(z, params) * qpow((iz - 0.5) * n, params) + c_function(
        -z, params
    ) * qpow((-iz - 0.5) * n, params)


def delta_p(p: float) -> float:
    """1/p - 1/2 with the conventions delta_1 = 1/2, delta_inf = -1/2."""
    if math.isinf(p):
        return -0.5
    if not 1.0 <= p:
        raise ExponentOutOfRange(f"exponent must lie in [1, inf], got {p}")
    return 1.0 / p - 0.5


def strip_contains(z: complex, p: float) -> str:
    """Locate z relative to the strip |Im z| <= |delta_p|.

    Returns "interior", "boundary" or "outside".  For p = 2 the strip is the
    real line, so nothing is interior.
    """
    d = abs(delta_p(p))
    im = abs(complex(z).imag)
    if im < d - _CLASSIFY_TOL:
        return "interior"
    if im <= d + _CLASSIFY_TOL:
        return "boundary"
    return "outside"


@dataclass(frozen=True, slots=True)
class SpectrumVerdict:
    classification: str  # "Interior" | "Boundary" | "Outside"
    residual: float


def _ellipse_residual(w: complex, p: float, params: TreeParams) -> float:
    q = params.q
    b = 2.0 * math.sqrt(q) / (q + 1)
    d = delta_p(p)
    lq = params.log_q
    u = (1.0 - w.real) / (b * math.cosh(d * lq))
    v = w.imag / (b * math.sinh(d * lq))
    return u * u + v * v - 1.0


def spectrum_membership(w: complex, p: float, params: TreeParams) -> SpectrumVerdict:
    """Locate w relative to the L^p spectrum of the Laplacian.

    For p != 2 the spectrum is the closed elliptic region with foci determined
    by b = 2*sqrt(q)/(q+1); for p = 2 it degenerates to the segment
    [1-b, 1+b] on the real axis.
    """
    w = complex(w)
    d = delta_p(p)
    if d == 0.0:
        b = 2.0 * math.sqrt(params.q) / (params.q + 1)
        residual = max(abs(w.imag), abs(w.real - 1.0) - b)
        if residual <= _CLASSIFY_TOL:
            return SpectrumVerdict("Boundary", residual)
        return SpectrumVerdict("Outside", residual)
    residual = _ellipse_residual(w, p, params)
    if residual < -_CLASSIFY_TOL:
        return SpectrumVerdict("Interior", residual)
    if residual <= _CLASSIFY_TOL:
        return SpectrumVerdict("Boundary", residual)
    return SpectrumVerdict("Outside", residual)


def ellipse_boundary_points(p: float, params: TreeParams, count: int) -> list[complex]:
    """Sample the spectral boundary gamma(s + i*delta_p), s uniform over a period."""
    if count < 2:
        raise ValueError("need at least 2 sample points")
    if delta_p(p) == 0.0:
        raise ExponentOutOfRange("the p = 2 spectrum is a segment, not an ellipse")
    tau = params.tau
    d = delta_p(p)
    return [
        gamma(complex(-tau / 2.0 + k * tau / count, d), params) for k in range(count)
    ]


def point_spectrum_contains(w: complex, p: float, params: TreeParams) -> bool:
    """Membership of w in the L^p point spectrum.

    Empty for p <= 2; the open spectral ellipse for p > 2.
    """
    if math.isinf(p):
        raise ExponentOutOfRange("point spectrum query requires p < inf")
    delta_p(p)  # range check
    if p <= 2.0:
        return False
    return spectrum_membership(w, p, params).classification == "Interior"


def phi_p_threshold(a: complex, p: float, params: TreeParams) -> float:
    """Chaos threshold for the affine generator a*L + b on L^p, p in (2, inf).

    (1 - gamma(i*delta_p)) * sqrt((Re a)^2 + tanh^2(delta_p log q) (Im a)^2);
    equals the excess sup of Re(a*gamma) over the strip above Re a.
    """
    if math.isinf(p) or p <= 2.0:
        raise ExponentOutOfRange(f"threshold defined for p in (2, inf), got {p}")
    a = complex(a)
    d = delta_p(p)
    lq = params.log_q
    scale = 1.0 - gamma(1j * d, params).real
    t = math.tanh(d * lq)
    return scale * math.sqrt(a.real * a.real + t * t * a.imag * a.imag)


def plancherel_density(s: float, params: TreeParams) -> float:
    """Density of the Plancherel measure: q / (2*tau*(q+1)) * |c(s)|^(-2).

    Extends continuously by 0 at the poles of c, where |c| blows up.
    The constant's grouping is pinned down by the requirement that the density
    integrate to 1 over a period (checked in the test suite via the unit mass
    of the delta function at the root).
    """
    q = params.q
    if _half_period_distance(complex(s), params) < POLE_TOL:
        return 0.0
    c = c_function(complex(s), params)
    return q / (2.0 * params.tau * (q + 1)) / (abs(c) ** 2)
