"""The Laplacian, power-series functional calculus, semigroups, heat kernels.

The functional calculus for entire generators is realised as a power series in
the (bounded) Laplacian with the conservative operator-norm bound 2; the
contour-integral calculus is not needed because every accepted generator is a
polynomial or a numerically composed exponential of one.

Radially lifted inputs keep their profile, and all series machinery runs on
the profile directly; general finitely supported inputs use the sparse vertex
map with locality-aware truncation (values dropped outside the cone of
influence of the final validity ball cannot affect the result).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import (
    ExponentOutOfRange,
    KernelTooShort,
    NoConvergence,
    RadiusExhausted,
    ZeroCoefficient,
)
from .spectral import phi_p_threshold
from .tree import (
    RadialSequence,
    TreeFunction,
    TreeParams,
    Vertex,
    distance,
    enumerate_ball,
)

# Conservative bound on the L^p operator norm of the Laplacian, any p.
LAPLACIAN_NORM_BOUND = 2.0


@dataclass(frozen=True, slots=True)
class AffineGenerator:
    """f(w) = a*w + b."""

    a: complex
    b: complex


@dataclass(frozen=True, slots=True)
class SeriesGenerator:
    """f(w) = sum_k coefficients[k] * w^k (a polynomial truncation)."""

    coefficients: tuple[complex, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("series generator needs at least one coefficient")


GeneratorSpec = Union[AffineGenerator, SeriesGenerator]


def generator_coefficients(gen: GeneratorSpec) -> tuple[complex, ...]:
    if isinstance(gen, AffineGenerator):
        return (complex(gen.b), complex(gen.a))
    return tuple(complex(c) for c in gen.coefficients)


def generator_symbol(gen: GeneratorSpec, w: complex) -> complex:
    """Evaluate the scalar symbol f(w)."""
    if isinstance(gen, AffineGenerator):
        return gen.a * w + gen.b
    acc = 0.0 + 0.0j
    for c in reversed(gen.coefficients):
        acc = acc * w + c
    return acc


# ---------------------------------------------------------------------------
# The Laplacian


def _average_profile(entries: Sequence[complex], q: int) -> list[complex]:
    # nearest-neighbour averaging of a radial profile; length shrinks by one
    n = len(entries)
    out = [entries[1]]
    for k in range(1, n - 1):
        out.append((entries[k - 1] + q * entries[k + 1]) / (q + 1))
    return out


def apply_averaging_radial(r: RadialSequence) -> RadialSequence:
    """Radial profile of the nearest-neighbour averaging operator."""
    if len(r) < 2:
        raise RadiusExhausted("averaging needs a profile of length >= 2")
    return RadialSequence(r.params, tuple(_average_profile(r.entries, r.params.q)))


def _laplacian_profile(entries: Sequence[complex], q: int) -> list[complex]:
    avg = _average_profile(entries, q)
    return [entries[k] - avg[k] for k in range(len(avg))]


def _laplacian_values(
    values: dict[Vertex, complex], new_radius: int, params: TreeParams
) -> dict[Vertex, complex]:
    q = params.q
    targets: set[Vertex] = set()
    for v in values:
        if v.depth <= new_radius:
            targets.add(v)
        if not v.is_root and v.depth - 1 <= new_radius:
            targets.add(v.parent())
        if v.depth + 1 <= new_radius:
            targets.update(v.child(c) for c in v.child_symbols(params))
    get = values.get
    out: dict[Vertex, complex] = {}
    for x in targets:
        nbr = 0.0 + 0.0j
        if not x.is_root:
            nbr += get(x.parent(), 0.0)
        for c in x.child_symbols(params):
            nbr += get(x.child(c), 0.0)
        out[x] = get(x, 0.0) - nbr / (q + 1)
    return out


def apply_laplacian(f: TreeFunction) -> TreeFunction:
    """f(x) - (1/(q+1)) * sum of f over the neighbours of x.

    The result is valid on the ball of radius f.radius - 1.
    """
    if f.radius < 1:
        raise RadiusExhausted("cannot apply the Laplacian at validity radius 0")
    if f.radial_profile is not None:
        return TreeFunction.from_radial(
            f.params, _laplacian_profile(f.radial_profile, f.params.q)
        )
    return TreeFunction(
        f.params, f.radius - 1, _laplacian_values(dict(f.values), f.radius - 1, f.params)
    )


# ---------------------------------------------------------------------------
# Polynomial functional calculus


def _truncate(values: dict[Vertex, complex], radius: int) -> dict[Vertex, complex]:
    return {v: c for v, c in values.items() if v.depth <= radius}


def _apply_polynomial(coeffs: Sequence[complex], g: TreeFunction) -> TreeFunction:
    degree = len(coeffs) - 1
    final_radius = g.radius - degree
    if final_radius < 0:
        raise RadiusExhausted(
            f"degree {degree} exceeds the validity radius {g.radius}"
        )
    if not g.values:
        return TreeFunction(g.params, g.radius, {})
    q = g.params.q
    if g.radial_profile is not None:
        cur = list(g.radial_profile)
        acc = [coeffs[0] * v for v in cur[: final_radius + 1]]
        for k in range(1, degree + 1):
            cur = _laplacian_profile(cur, q)
            ck = coeffs[k]
            for n in range(final_radius + 1):
                acc[n] += ck * cur[n]
        return TreeFunction.from_radial(g.params, acc)
    cur = dict(g.values)
    cur_radius = g.radius
    acc = {v: coeffs[0] * c for v, c in cur.items() if v.depth <= final_radius}
    for k in range(1, degree + 1):
        # values deeper than this cannot influence the final validity ball
        limit = final_radius + (degree - k)
        cur = _laplacian_values(cur, min(cur_radius - 1, limit), g.params)
        cur_radius -= 1
        ck = coeffs[k]
        for v, c in cur.items():
            if v.depth <= final_radius:
                acc[v] = acc.get(v, 0.0) + ck * c
    return TreeFunction(g.params, final_radius, acc)


def analytic_apply(
    gen: GeneratorSpec,
    g: TreeFunction,
    tol: float = 1e-10,
    max_terms: int = 200,
) -> TreeFunction:
    """Apply the polynomial symbol of `gen` to the Laplacian acting on g.

    Trailing coefficients whose tail is below `tol` in the norm-2 majorant
    sum_{k>M} |c_k| 2^k are dropped to save validity radius.
    """
    coeffs = generator_coefficients(gen)
    weights = [abs(c) * LAPLACIAN_NORM_BOUND**k for k, c in enumerate(coeffs)]
    total = sum(weights)
    cut = len(coeffs)
    tail = 0.0
    while cut > 1 and tail + weights[cut - 1] <= tol:
        tail += weights[cut - 1]
        cut -= 1
    if cut - 1 > max_terms:
        raise NoConvergence(
            f"series needs {cut - 1} terms > max_terms = {max_terms} "
            f"(majorant mass {total:.3g})"
        )
    return _apply_polynomial(coeffs[:cut], g)


def _exp_series_coefficients(
    u: Sequence[complex], tol: float, max_terms: int
) -> tuple[list[complex], float]:
    """Coefficients of exp(u(w)) up to the order whose norm-2 tail is < tol.

    The constant coefficient only contributes the exact factor |exp(u_0)|;
    the rest is bounded by the positive majorant exp(sum_{j>=1} |u_j| (2w)^j)
    evaluated coefficientwise at w = 1, which dominates sum_k |d_k| 2^k.
    """
    v = [abs(c) * LAPLACIAN_NORM_BOUND**k for k, c in enumerate(u)]
    scale = abs(cmath.exp(complex(u[0])))
    majorant_total = scale * math.exp(sum(v[1:]))
    d = [cmath.exp(complex(u[0]))]
    e = [scale]
    partial = e[0]
    deg = len(u) - 1
    n = 0
    while majorant_total - partial > tol:
        n += 1
        if n > max_terms:
            raise NoConvergence(
                f"exponential series tail {majorant_total - partial:.3g} > tol "
                f"after {max_terms} terms"
            )
        dn = 0.0 + 0.0j
        en = 0.0
        for k in range(1, min(n, deg) + 1):
            dn += k * complex(u[k]) * d[n - k]
            en += k * v[k] * e[n - k]
        d.append(dn / n)
        e.append(en / n)
        partial += e[-1]
    return d, majorant_total - partial


def semigroup_terms(
    gen: GeneratorSpec, t: float, tol: float = 1e-10, max_terms: int = 200
) -> tuple[list[complex], float]:
    """Power-series coefficients of exp(t*f(w)) with a certified norm-2 tail."""
    if t < 0:
        raise ValueError("semigroup time must be >= 0")
    u = [t * c for c in generator_coefficients(gen)]
    return _exp_series_coefficients(u, tol, max_terms)


def exp_generator(
    xi: complex, tol: float = 1e-12, max_terms: int = 200
) -> SeriesGenerator:
    """Truncated power series of w -> exp(xi*w) with norm-2 tail below tol."""
    coeffs, _ = _exp_series_coefficients([0.0, complex(xi)], tol, max_terms)
    return SeriesGenerator(tuple(coeffs))


def semigroup_apply(
    gen: GeneratorSpec,
    t: float,
    g: TreeFunction,
    tol: float = 1e-10,
    max_terms: int = 200,
) -> TreeFunction:
    """e^{t f(L)} g by the truncated exponential power series; t = 0 is the identity."""
    coeffs, _ = semigroup_terms(gen, t, tol, max_terms)
    return _apply_polynomial(coeffs, g)


# ---------------------------------------------------------------------------
# Heat kernels and Bessel machinery


@dataclass(frozen=True)
class HeatKernel:
    xi: complex
    kernel: RadialSequence
    terms_used: int
    tail_bound: float


def _step_terms(xi: complex, tol: float, max_terms: int) -> tuple[list[complex], float]:
    # coefficients e^{-xi} xi^k / k! and the absolute tail bound
    r = abs(xi)
    scale = abs(cmath.exp(-xi))
    coeffs = [cmath.exp(-xi)]
    partial = 1.0
    term = 1.0
    k = 0
    while scale * (math.exp(r) - partial) > tol:
        k += 1
        if k > max_terms:
            raise NoConvergence(
                f"heat kernel series tail above tol after {max_terms} terms"
            )
        coeffs.append(coeffs[-1] * xi / k)
        term *= r / k
        partial += term
    return coeffs, scale * (math.exp(r) - partial)


def heat_kernel(
    xi: complex,
    max_radius: int,
    params: TreeParams,
    tol: float = 1e-12,
    max_terms: int = 500,
) -> HeatKernel:
    """Radial kernel h_xi of distance d: e^{-xi} sum_k (xi^k/k!) mu1^{*k}(d).

    mu1 is the uniform step distribution on the unit sphere; its k-th
    convolution power is obtained by iterating the radial averaging recursion
    on the delta profile.  Each power has unit total mass, so the truncation
    tail is the scalar exponential remainder.
    """
    if max_radius < 0:
        raise ValueError("max_radius must be >= 0")
    coeffs, tail = _step_terms(xi, tol, max_terms)
    n_terms = len(coeffs)
    q = params.q
    # profile long enough to survive n_terms-1 averaging steps
    profile = [0.0 + 0.0j] * (max_radius + n_terms)
    profile[0] = 1.0 + 0.0j
    acc = [coeffs[0] * profile[d] for d in range(max_radius + 1)]
    cur = profile
    for k in range(1, n_terms):
        cur = _average_profile(cur, q)
        ck = coeffs[k]
        for d in range(max_radius + 1):
            acc[d] += ck * cur[d]
    return HeatKernel(
        complex(xi),
        RadialSequence(params, tuple(acc)),
        n_terms,
        tail,
    )


def convolve_radial(
    f: TreeFunction, k: RadialSequence, out_radius: int | None = None
) -> TreeFunction:
    """Pointwise convolution with a radial kernel: (f*k)(x) = sum_y f(y) k(d(x,y))."""
    if out_radius is None:
        out_radius = f.radius
    support = [(v, c) for v, c in f.values.items()]
    reach = out_radius + max((v.depth for v, _ in support), default=0)
    if len(k) <= reach:
        raise KernelTooShort(
            f"kernel of length {len(k)} cannot cover distances up to {reach}"
        )
    entries = k.entries
    out: dict[Vertex, complex] = {}
    for x in enumerate_ball(out_radius, f.params):
        acc = 0.0 + 0.0j
        for y, c in support:
            acc += c * entries[distance(x, y)]
        out[x] = acc
    return TreeFunction(f.params, out_radius, out)


def bessel_I(d: int, z: complex) -> complex:
    """Modified Bessel function of integer order via its entire power series."""
    if d < 0:
        raise ValueError("order must be >= 0")
    z = complex(z)
    half = z / 2.0
    term = 1.0 + 0.0j
    for k in range(1, d + 1):
        term *= half / k
    total = term
    sq = half * half
    m = 0
    while True:
        m += 1
        term *= sq / (m * (m + d))
        total += term
        if abs(term) <= 1e-18 * max(1.0, abs(total)) or m > 400:
            return total


def lattice_heat_kernel(w: complex, d: int) -> complex:
    """Heat kernel on the integer lattice: e^{-w} I_d(w)."""
    return cmath.exp(-complex(w)) * bessel_I(d, w)


def norm_lower_bound(xi: complex, p: float, params: TreeParams) -> float:
    """exp(Re xi + Phi_p(xi)): a lower bound for the L^p -> L^p norm of e^{xi L}.

    Attained as the supremum of |e^{xi gamma(z)}| over the open strip.
    """
    if math.isinf(p) or p <= 2.0:
        raise ExponentOutOfRange(f"norm bound stated for p in (2, inf), got {p}")
    return math.exp(complex(xi).real + phi_p_threshold(xi, p, params))
