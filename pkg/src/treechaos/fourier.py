"""Poisson kernel and transform, boundary Fourier transform, Plancherel check.

Boundary integrals of cone-constant data are exact finite sums.  The Poisson
transform aggregates sub-cones analytically (a geometric sum over the split
depth along the path to x), which is exactly equal to refining the cone
partition past |x| and summing, but costs O(anchors + |x|) instead of
O(q^{|x|}).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConeTooShallow, QuadratureNotConverged, ValidationError
from .spectral import plancherel_density
from .tree import (
    BoundaryCone,
    ConeFunction,
    TreeFunction,
    TreeParams,
    Vertex,
    common_prefix_length,
    enumerate_ball,
    enumerate_sphere,
    horocycle_height,
    refine_cone_function,
)


@dataclass(frozen=True)
class FourierSlice:
    """The boundary transform of f at a fixed spectral parameter."""

    z: complex
    F: ConeFunction


def poisson_kernel(x: Vertex, cone: BoundaryCone, params: TreeParams) -> Fraction:
    """p(x, omega) = q^{height}: constant on the cone when it is deeper than x."""
    h = horocycle_height(x, cone)
    if h >= 0:
        return Fraction(params.q**h)
    return Fraction(1, params.q**(-h))


def _kernel_power(h: float, exponent: complex, params: TreeParams) -> complex:
    # q^(exponent * h) on the principal branch
    return cmath.exp(exponent * params.log_q * h)


def poisson_transform(z: complex, F: ConeFunction, x: Vertex) -> complex:
    """Integral of p^{1/2+iz}(x, .) F over the boundary.

    For every anchor u the height is constant on the sub-cones that split off
    the path to x at a fixed depth, so the cone integral collapses to a
    geometric sum; no explicit refinement of F is needed.
    """
    params = F.params
    q = params.q
    expo = 0.5 + 1j * complex(z)
    m = x.depth
    depth = F.depth
    base_measure = 1.0 / ((q + 1) * q ** (depth - 1))
    total = 0.0 + 0.0j
    for u, val in F.values.items():
        if val == 0:
            continue
        lcp = common_prefix_length(x.word, u.word)
        if lcp < depth or depth > m:
            # u is not an ancestor of x (or the cone is already deeper than x):
            # the height is constant on the whole cone
            total += val * _kernel_power(2 * lcp - m, expo, params) * base_measure
            continue
        # u is an ancestor of x: split rays by the depth j at which they leave
        # the path to x; (q-1) of the q onward cones diverge at each j >= depth
        w = 0.0 + 0.0j
        for j in range(depth, m):
            w += (
                (q - 1)
                * _kernel_power(2 * j - m, expo, params)
                / ((q + 1) * q**j)
            )
        w += _kernel_power(m, expo, params) / ((q + 1) * q ** (m - 1))
        total += val * w
    return total


def poisson_transform_naive(z: complex, F: ConeFunction, x: Vertex) -> complex:
    """Reference evaluation: refine past |x| and sum cone by cone."""
    params = F.params
    G = refine_cone_function(F, max(F.depth, x.depth + 1))
    expo = 0.5 + 1j * complex(z)
    measure = 1.0 / ((params.q + 1) * params.q ** (G.depth - 1))
    total = 0.0 + 0.0j
    for u, val in G.values.items():
        h = horocycle_height(x, BoundaryCone(u))
        total += val * _kernel_power(h, expo, params) * measure
    return total


def poisson_transform_ball(z: complex, F: ConeFunction, radius: int) -> TreeFunction:
    """Poisson transform evaluated on the whole ball of the given radius."""
    values = {
        x: poisson_transform(z, F, x) for x in enumerate_ball(radius, F.params)
    }
    return TreeFunction(F.params, radius, values)


def hf_transform(f: TreeFunction, z: complex) -> FourierSlice:
    """Boundary Fourier transform sum_x f(x) p^{1/2+iz}(x, .) of finitely
    supported f, represented exactly on cones one level past the support."""
    params = f.params
    depth = max(1, f.support_radius() + 1)
    expo = 0.5 + 1j * complex(z)
    support = list(f.values.items())
    values: dict[Vertex, complex] = {}
    for u in enumerate_sphere(depth, params):
        acc = 0.0 + 0.0j
        for x, c in support:
            h = 2 * common_prefix_length(x.word, u.word) - x.depth
            acc += c * _kernel_power(h, expo, params)
        values[u] = acc
    return FourierSlice(complex(z), ConeFunction(params, depth, values))


def duality_check(
    f: TreeFunction, F: ConeFunction, z: complex
) -> tuple[complex, complex]:
    """Both sides of the pairing identity: boundary integral of f~ against F
    versus the tree sum of f against the Poisson transform of F."""
    slice_ = hf_transform(f, z)
    depth = max(slice_.F.depth, F.depth)
    ft = refine_cone_function(slice_.F, depth)
    Fr = refine_cone_function(F, depth)
    measure = 1.0 / ((f.params.q + 1) * f.params.q ** (depth - 1))
    lhs = sum(ft.values[u] * Fr.values[u] for u in ft.values) * measure
    rhs = sum(c * poisson_transform(z, F, x) for x, c in f.values.items())
    return lhs, rhs


def _boundary_energy_factory(f: TreeFunction):
    """Vectorised s -> integral over the boundary of |f~(s, .)|^2."""
    params = f.params
    depth = max(1, f.support_radius() + 1)
    support = list(f.values.items())
    anchors = enumerate_sphere(depth, params)
    heights = np.array(
        [
            [2 * common_prefix_length(x.word, u.word) - x.depth for x, _ in support]
            for u in anchors
        ],
        dtype=float,
    )
    coeffs = np.array([c for _, c in support], dtype=complex)
    measure = 1.0 / ((params.q + 1) * params.q ** (depth - 1))
    lq = params.log_q

    def energy(s: float) -> float:
        ft = np.exp((0.5 + 1j * s) * lq * heights) @ coeffs
        return float(np.sum(np.abs(ft) ** 2)) * measure

    return energy


def plancherel_norm(
    f: TreeFunction,
    quad_points: int = 16,
    tol: float = 1e-9,
    max_levels: int = 12,
) -> float:
    """Squared L^2 norm of f computed on the Fourier side.

    The boundary integral is exact; the spectral integral over a period uses
    composite Gauss-Legendre panels, dyadically refined until two successive
    levels agree within `tol`.
    """
    if quad_points < 16:
        raise ValidationError("quad_points must be >= 16")
    energy = _boundary_energy_factory(f)
    params = f.params
    tau = params.tau
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)

    def level_value(panels: int) -> float:
        total = 0.0
        width = tau / panels
        for k in range(panels):
            a = -tau / 2.0 + k * width
            mid = a + width / 2.0
            ss = mid + nodes * (width / 2.0)
            vals = [energy(s) * plancherel_density(s, params) for s in ss]
            total += (width / 2.0) * float(np.dot(weights, vals))
        return total

    prev = level_value(2)
    panels = 4
    for _ in range(max_levels):
        cur = level_value(panels)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
        panels *= 2
    raise QuadratureNotConverged(
        f"spectral quadrature did not stabilise within {max_levels} refinements"
    )
