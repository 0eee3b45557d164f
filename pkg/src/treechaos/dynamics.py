"""Chaos classification of semigroups generated by functions of the Laplacian.

The semigroup e^{t f(L)} on L^p is chaotic exactly when the composed symbol
Gamma(z) = f(gamma(z)) meets the imaginary axis inside the open spectral
strip.  For affine generators the condition collapses to an explicit interval
for Re b; for general polynomial generators only the "both signs of Re Gamma
on a grid" direction can be certified numerically, so a one-signed sample is
reported as inconclusive rather than as a disproof.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConstantComposition,
    ExponentOutOfRange,
    NoRootFound,
    ZeroCoefficient,
)
from .operators import (
    AffineGenerator,
    GeneratorSpec,
    generator_coefficients,
    generator_symbol,
    semigroup_apply,
    semigroup_terms,
)
from .spectral import SpectralPoint, delta_p, gamma, phi, phi_p_threshold
from .tree import TreeFunction, TreeParams

CHAOTIC = "Chaotic"
NOT_HYPERCYCLIC = "NotHypercyclic"
NOT_CHAOTIC_NO_SEPARABILITY = "NotChaotic_NoSeparability"
NOT_CHAOTIC_NO_PERIODIC_POINTS = "NotChaotic_NoPeriodicPoints"
INCONCLUSIVE_NUMERIC = "Inconclusive_Numeric"

DEFAULT_GRID = (512, 33)


@dataclass(frozen=True)
class ChaosVerdict:
    classification: str
    interval: tuple[float, float] | None = None
    evidence: dict = field(default_factory=dict)
    notes: str = ""


@dataclass(frozen=True)
class PeriodicWitness:
    z0: SpectralPoint
    t0: float
    gamma_value: complex  # composed symbol at z0
    residual: float


def _check_exponent(p: float) -> float:
    if math.isnan(p) or p < 1.0:
        raise ExponentOutOfRange(f"exponent must lie in [1, inf], got {p}")
    return p


def classify_affine(
    p: float, a: complex, b: complex, params: TreeParams
) -> ChaosVerdict:
    """Exact chaoticity verdict for the generator a*L + b.

    On L^p with p > 2 the semigroup is chaotic (equivalently hypercyclic)
    precisely when Re b lies in the open interval (-Re a - Phi, -Re a + Phi).
    Only Re b matters; a purely imaginary shift is a unimodular factor.
    """
    _check_exponent(p)
    a = complex(a)
    b = complex(b)
    if a == 0:
        raise ZeroCoefficient("affine generator needs a != 0")
    if math.isinf(p):
        return ChaosVerdict(
            NOT_CHAOTIC_NO_SEPARABILITY,
            notes="L^inf is not separable, so no semigroup is hypercyclic on it",
        )
    if p <= 2.0:
        return ChaosVerdict(
            NOT_CHAOTIC_NO_PERIODIC_POINTS,
            notes="the L^p point spectrum is empty for p <= 2",
        )
    threshold = phi_p_threshold(a, p, params)
    lo = -a.real - threshold
    hi = -a.real + threshold
    notes = "chaotic iff hypercyclic for affine generators with p > 2"
    if b.imag != 0.0:
        notes += f"; Im b = {b.imag!r} only contributes a unimodular factor"
    if lo < b.real < hi:
        return ChaosVerdict(CHAOTIC, (lo, hi), {"re_b": b.real}, notes)
    return ChaosVerdict(NOT_HYPERCYCLIC, (lo, hi), {"re_b": b.real}, notes)


def heat_interval(p: float, params: TreeParams) -> tuple[float, float]:
    """Open interval of shifts b for which e^{-t(L-b)} is chaotic on L^p, p > 2."""
    if math.isinf(p) or p <= 2.0:
        raise ExponentOutOfRange(f"interval defined for p in (2, inf), got {p}")
    d = delta_p(p)
    tau = params.tau
    return (
        gamma(1j * d, params).real,
        gamma(tau / 2.0 + 1j * d, params).real,
    )


def schrodinger_interval(p: float, params: TreeParams) -> tuple[float, float]:
    """Open interval of shifts b for which e^{t(iL+b)} is chaotic on L^p, p > 2.

    Equals (-Phi_p(i), Phi_p(i)); for p > 2 the quarter-period imaginary part
    of gamma is negative, so the interval is correctly oriented as written.
    """
    if math.isinf(p) or p <= 2.0:
        raise ExponentOutOfRange(f"interval defined for p in (2, inf), got {p}")
    d = delta_p(p)
    tau = params.tau
    lo = gamma(tau / 4.0 + 1j * d, params).imag
    hi = gamma(-tau / 4.0 + 1j * d, params).imag
    threshold = phi_p_threshold(1j, p, params)
    assert abs(lo + threshold) < 1e-12 and abs(hi - threshold) < 1e-12
    return lo, hi


def _gamma_grid(p: float, params: TreeParams, grid: tuple[int, int]) -> np.ndarray:
    n_s, n_y = grid
    tau = params.tau
    d = abs(delta_p(p))
    s = np.linspace(-tau / 2.0, tau / 2.0, n_s, endpoint=False)
    # Chebyshev nodes keep the rows strictly inside the open strip while
    # clustering them near the boundary, where the symbol peaks
    y = d * np.cos(np.pi * (2 * np.arange(n_y) + 1) / (2 * n_y))
    z = s[None, :] + 1j * y[:, None]
    lq = params.log_q
    return 1.0 - (
        np.exp((0.5 + 1j * z) * lq) + np.exp((0.5 - 1j * z) * lq)
    ) / (params.q + 1)


def _symbol_on(gen: GeneratorSpec, w: np.ndarray) -> np.ndarray:
    coeffs = generator_coefficients(gen)
    acc = np.zeros_like(w)
    for c in reversed(coeffs):
        acc = acc * w + c
    return acc


def classify_analytic(
    p: float,
    gen: GeneratorSpec,
    params: TreeParams,
    grid: tuple[int, int] = DEFAULT_GRID,
) -> ChaosVerdict:
    """Grid-sampled verdict via the sign of Re Gamma on the open strip.

    Both signs occurring certifies chaoticity (the symbol is an open map, so
    it crosses the imaginary axis).  A one-signed sample disproves nothing for
    a general polynomial generator and is reported as inconclusive; affine
    generators defer to the closed form.
    """
    _check_exponent(p)
    if math.isinf(p):
        return ChaosVerdict(
            NOT_CHAOTIC_NO_SEPARABILITY,
            notes="L^inf is not separable, so no semigroup is hypercyclic on it",
        )
    if p <= 2.0:
        return ChaosVerdict(
            NOT_CHAOTIC_NO_PERIODIC_POINTS,
            notes="the L^p point spectrum is empty for p <= 2",
        )
    re_sym = _symbol_on(gen, _gamma_grid(p, params, grid)).real
    lo = float(re_sym.min())
    hi = float(re_sym.max())
    signs = "both" if lo < 0.0 < hi else ("negative" if hi <= 0.0 else "positive")
    evidence = {
        "re_symbol_min": lo,
        "re_symbol_max": hi,
        "grid_signs": signs,
        "grid": list(grid),
    }
    scale = max(1.0, abs(lo), abs(hi))
    if hi - lo < 1e-14 * scale:
        raise ConstantComposition(
            "the composed symbol is numerically constant on the strip"
        )
    if signs == "both":
        interval = None
        if isinstance(gen, AffineGenerator):
            interval = classify_affine(p, gen.a, gen.b, params).interval
        return ChaosVerdict(CHAOTIC, interval, evidence, "sign change of Re symbol")
    if isinstance(gen, AffineGenerator):
        closed = classify_affine(p, gen.a, gen.b, params)
        return ChaosVerdict(closed.classification, closed.interval, evidence,
                            closed.notes)
    return ChaosVerdict(
        INCONCLUSIVE_NUMERIC,
        None,
        evidence,
        "one-signed sample; grid evidence cannot disprove chaoticity",
    )


def _composed_symbol(gen: GeneratorSpec, z: complex, params: TreeParams) -> complex:
    return generator_symbol(gen, gamma(z, params))


def find_periodic_witness(
    p: float,
    gen: GeneratorSpec,
    params: TreeParams,
    tol: float = 1e-10,
    grid: tuple[int, int] = DEFAULT_GRID,
) -> PeriodicWitness:
    """Locate z0 in the open strip with the composed symbol on the imaginary
    axis, and the matching period t0 with e^{t0 Gamma(z0)} = 1.

    Scans grid rows (the real axis first) for sign changes of Re Gamma and
    bisects each bracket; exact zeros on the grid are used directly.
    """
    _check_exponent(p)
    if math.isinf(p) or p <= 2.0:
        raise NoRootFound(
            f"no non-trivial periodic points exist on L^p for p = {p}"
        )
    n_s, n_y = grid
    tau = params.tau
    d = abs(delta_p(p))
    rows = [0.0] + [
        d * math.cos(math.pi * (2 * j + 1) / (2 * n_y)) for j in range(n_y)
    ]
    s_grid = [-tau / 2.0 + k * tau / n_s for k in range(n_s)]
    s_grid.sort(key=abs)  # prefer small |s| roots: shorter witnesses

    def re_sym(s: float, y: float) -> float:
        return _composed_symbol(gen, complex(s, y), params).real

    candidates: list[complex] = []
    for y in rows:
        vals = [(s, re_sym(s, y)) for s in s_grid]
        for s, v in vals:
            if abs(v) < 1e-13:
                candidates.append(complex(s, y))
        ordered = sorted(vals)
        for (s1, v1), (s2, v2) in zip(ordered, ordered[1:]):
            if v1 == 0.0 or v2 == 0.0 or v1 * v2 > 0.0:
                continue
            lo_s, hi_s, lo_v = s1, s2, v1
            for _ in range(80):
                mid = 0.5 * (lo_s + hi_s)
                mv = re_sym(mid, y)
                if mv == 0.0:
                    lo_s = hi_s = mid
                    break
                if (mv > 0) == (lo_v > 0):
                    lo_s, lo_v = mid, mv
                else:
                    hi_s = mid
            candidates.append(complex(0.5 * (lo_s + hi_s), y))
        if candidates:
            break  # the real-axis row (or first row with roots) suffices

    for z0 in candidates:
        sym = _composed_symbol(gen, z0, params)
        t0 = 2.0 * math.pi / abs(sym.imag) if abs(sym.imag) > 1e-12 else 1.0
        residual = abs(cmath.exp(t0 * sym) - 1.0)
        if residual <= tol:
            return PeriodicWitness(SpectralPoint.of(z0, params), t0, sym, residual)
    raise NoRootFound(
        "no root of Re of the composed symbol met the residual tolerance"
    )


def orbit_norm_trajectory(
    gen: GeneratorSpec,
    z: complex,
    times: list[float],
    p: float,
    params: TreeParams,
    ball_radius: int = 3,
    tol: float = 1e-10,
    max_terms: int = 200,
) -> list[tuple[float, float, float]]:
    """Predicted versus measured growth of the semigroup on the spherical
    eigenfunction: (t, e^{t Re Gamma(z)}, |T(t) phi_z|(root)).

    Decaying trajectories witness orbits attracted to zero, growing ones
    witness states reachable from arbitrarily small vectors.
    """
    sym = _composed_symbol(gen, z, params)
    needed = max(
        len(semigroup_terms(gen, t, tol, max_terms)[0]) - 1 for t in times
    )
    profile = [phi(z, n, params) for n in range(ball_radius + needed + 1)]
    g = TreeFunction.from_radial(params, profile)
    out: list[tuple[float, float, float]] = []
    for t in times:
        predicted = math.exp(t * sym.real)
        res = semigroup_apply(gen, t, g, tol, max_terms)
        measured = abs(res.radial_profile[0])
        out.append((t, predicted, measured))
    return out


def h_extrema(
    a: complex, b: float, p: float, params: TreeParams
) -> tuple[float, float, float, float]:
    """Extrema of s -> Re(a*gamma(s + i delta_p) + b) over a period.

    Closed form (Re a +- Phi_p(a) + b); the arg locations come from writing
    the oscillating part as a single cosine.
    """
    if math.isinf(p) or p <= 2.0:
        raise ExponentOutOfRange(f"extrema stated for p in (2, inf), got {p}")
    a = complex(a)
    q = params.q
    lq = params.log_q
    tau = params.tau
    threshold = phi_p_threshold(a, p, params)
    h_max = a.real + threshold + b
    h_min = a.real - threshold + b
    big = (q ** (1.0 / p) + q ** (1.0 - 1.0 / p)) / (q + 1)
    small = (q ** (1.0 / p) - q ** (1.0 - 1.0 / p)) / (q + 1)
    theta = math.atan2(-small * a.imag, -big * a.real)
    s_max = _wrap_period(theta / lq, tau)
    s_min = _wrap_period(s_max + tau / 2.0, tau)
    return h_max, h_min, s_max, s_min


def _wrap_period(s: float, tau: float) -> float:
    k = math.floor((s + tau / 2.0) / tau)
    return s - k * tau
