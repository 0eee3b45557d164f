"""Poisson and boundary Fourier machinery against refine-and-sum oracles."""
import cmath
import random
from fractions import Fraction

import pytest

from treechaos import (
    ConeFunction,
    ROOT,
    TreeFunction,
    TreeParams,
    apply_laplacian,
    duality_check,
    enumerate_ball,
    enumerate_sphere,
    gamma,
    hf_transform,
    phi,
    plancherel_norm,
    poisson_kernel,
    poisson_transform,
    poisson_transform_ball,
)
from treechaos.errors import QuadratureNotConverged
from treechaos.fourier import poisson_transform_naive
from treechaos.tree import BoundaryCone, Vertex, horocycle_height, parse_vertex


def random_cone_function(params, depth, rng):
    return ConeFunction.from_anchor_values(
        params,
        depth,
        {
            v: complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            for v in enumerate_sphere(depth, params)
        },
    )


def test_poisson_kernel_is_a_probability_density():
    # integral of p(x, .) over the boundary is 1: evaluate at the exponent
    # that makes p^{1/2+iz} equal p itself
    for q in (2, 3):
        params = TreeParams(q)
        ones = ConeFunction.constant(params, 1, 1.0)
        for x in enumerate_ball(4, params):
            assert abs(poisson_transform(-0.5j, ones, x) - 1.0) < 1e-13


def test_poisson_kernel_exact_values():
    params = TreeParams(2)
    x = parse_vertex((0, 0), params)
    deep = BoundaryCone(Vertex((0, 0, 0)))
    assert horocycle_height(x, deep) == 2
    assert poisson_kernel(x, deep, params) == 4
    away = BoundaryCone(Vertex((1, 0, 0)))
    assert horocycle_height(x, away) == -2
    assert poisson_kernel(x, away, params) == Fraction(1, 4)


def test_poisson_transform_matches_naive():
    rng = random.Random(23)
    for q in (2, 3):
        params = TreeParams(q)
        for depth in (1, 2):
            F = random_cone_function(params, depth, rng)
            for z in (0.0, 0.31 - 0.18j, 1.2 + 0.3j):
                for x in enumerate_ball(4, params):
                    a = poisson_transform(z, F, x)
                    b = poisson_transform_naive(z, F, x)
                    assert abs(a - b) < 1e-13


def test_poisson_transform_of_one_is_phi():
    params = TreeParams(2)
    ones = ConeFunction.constant(params, 1, 1.0)
    for z in (0.0, 0.4, 0.7 - 0.2j):
        for x in enumerate_ball(5, params):
            assert abs(poisson_transform(z, ones, x) - phi(z, x.depth, params)) < 1e-13


def test_poisson_transform_is_an_eigenfunction():
    rng = random.Random(29)
    params = TreeParams(2)
    F = random_cone_function(params, 2, rng)
    z = 0.27 + 0.14j
    g = gamma(z, params)
    pf = poisson_transform_ball(z, F, 5)
    lap = apply_laplacian(pf)
    for x in enumerate_ball(4, params):
        assert abs(lap.value(x) - g * pf.value(x)) < 1e-12


def test_hf_transform_of_root_delta_is_constant_one():
    params = TreeParams(3)
    slice_ = hf_transform(TreeFunction.delta(params, ROOT), 0.42)
    assert all(abs(v - 1.0) < 1e-15 for v in slice_.F.values.values())


def test_hf_transform_of_shifted_delta():
    params = TreeParams(2)
    x = parse_vertex((0,), params)
    z = 0.3 - 0.1j
    slice_ = hf_transform(TreeFunction.delta(params, x), z)
    expo = 0.5 + 1j * z
    for u, v in slice_.F.values.items():
        h = horocycle_height(x, BoundaryCone(u))
        assert abs(v - cmath.exp(expo * params.log_q * h)) < 1e-14


def test_hf_transform_linear_and_periodic():
    rng = random.Random(31)
    params = TreeParams(2)
    ball = enumerate_ball(2, params)
    values = {v: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for v in ball}
    f = TreeFunction(params, 2, values)
    g = TreeFunction(params, 2, {v: 2.0 * c for v, c in values.items()})
    z = 0.21
    sf = hf_transform(f, z)
    sg = hf_transform(g, z)
    for u in sf.F.values:
        assert abs(sg.F.values[u] - 2.0 * sf.F.values[u]) < 1e-13
    shifted = hf_transform(f, z + params.tau)
    for u in sf.F.values:
        assert abs(shifted.F.values[u] - sf.F.values[u]) < 1e-12


def test_hf_transform_conjugation_symmetry():
    rng = random.Random(37)
    params = TreeParams(2)
    values = {
        v: complex(rng.uniform(-1, 1), 0.0) for v in enumerate_ball(2, params)
    }
    f = TreeFunction(params, 2, values)
    s = 0.64
    plus = hf_transform(f, s)
    minus = hf_transform(f, -s)
    for u in plus.F.values:
        assert abs(plus.F.values[u].conjugate() - minus.F.values[u]) < 1e-13


def test_duality_pairing():
    rng = random.Random(41)
    for q in (2, 3):
        params = TreeParams(q)
        ball = enumerate_ball(2, params)
        f = TreeFunction(
            params,
            2,
            {v: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for v in rng.sample(ball, 4)},
        )
        F = random_cone_function(params, 2, rng)
        for z in (0.0, 0.33 - 0.21j):
            lhs, rhs = duality_check(f, F, z)
            assert abs(lhs - rhs) < 1e-12


def test_plancherel_norm_matches_exact_sum():
    rng = random.Random(43)
    params = TreeParams(2)
    ball = enumerate_ball(3, params)
    values = {
        v: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for v in rng.sample(ball, 6)
    }
    f = TreeFunction(params, 3, values)
    exact = sum(abs(c) ** 2 for c in values.values())
    assert abs(plancherel_norm(f) - exact) < 1e-8 * exact


def test_plancherel_norm_convergence_guard():
    params = TreeParams(2)
    f = TreeFunction.delta(params, ROOT)
    with pytest.raises(QuadratureNotConverged):
        plancherel_norm(f, tol=1e-16, max_levels=1)
