"""Scalar spectral formulas against a 50-digit mpmath oracle."""
import cmath
import math
import random

import mpmath
import pytest

from treechaos import (
    TreeParams,
    c_function,
    canonical_z,
    delta_p,
    ellipse_boundary_points,
    gamma,
    phi,
    phi_p_threshold,
    plancherel_density,
    point_spectrum_contains,
    spectrum_membership,
    strip_contains,
)
from treechaos.errors import ExponentOutOfRange, PoleAtHalfPeriod

mpmath.mp.dps = 50


def mp_gamma(z, q):
    q = mpmath.mpf(q)
    return 1 - (q ** (mpmath.mpf("0.5") + 1j * z) + q ** (mpmath.mpf("0.5") - 1j * z)) / (
        q + 1
    )


def mp_c(z, q):
    q = mpmath.mpf(q)
    iz = 1j * mpmath.mpmathify(z)
    num = q ** (mpmath.mpf("0.5") + iz) - q ** (-mpmath.mpf("0.5") - iz)
    den = q**iz - q ** (-iz)
    return mpmath.sqrt(q) / (q + 1) * num / den


def test_gamma_even_and_periodic():
    rng = random.Random(7)
    for q in (2, 3, 5):
        params = TreeParams(q)
        for _ in range(25):
            z = complex(rng.uniform(-5, 5), rng.uniform(-1, 1))
            assert abs(gamma(z, params) - gamma(-z, params)) < 1e-14
            assert abs(gamma(z + params.tau, params) - gamma(z, params)) < 1e-13


def test_gamma_against_mpmath():
    for q in (2, 3):
        params = TreeParams(q)
        for z in (0.0, 0.37 - 0.21j, 1.5 + 0.4j):
            expected = complex(mp_gamma(z, q))
            assert abs(gamma(z, params) - expected) < 1e-15


def test_gamma_at_zero_value():
    params = TreeParams(2)
    assert abs(gamma(0.0, params) - (1 - 2 * math.sqrt(2) / 3)) < 1e-15


def test_c_function_against_mpmath():
    for q in (2, 3):
        params = TreeParams(q)
        for z in (1.0, 0.3 - 0.2j, -0.9 + 0.55j):
            assert abs(c_function(z, params) - complex(mp_c(z, q))) < 1e-14


def test_c_function_pole_guard():
    params = TreeParams(2)
    for z in (0.0, params.tau / 2, -params.tau, 2e-10):
        with pytest.raises(PoleAtHalfPeriod):
            c_function(z, params)


def test_phi_branches_agree_in_the_limit():
    # the generic two-exponential branch approaches the lattice polynomial
    # branch; at offset 1e-6 the two agree to ~the offset itself
    for q in (2, 3):
        params = TreeParams(q)
        for m in (0, 1):
            z0 = m * params.tau / 2
            for n in range(11):
                special = phi(z0, n, params)
                generic = phi(z0 + 1e-6 + 1e-6j, n, params)
                assert abs(special - generic) < 1e-5


def test_phi_normalised_and_bounded_on_the_real_axis():
    for q in (2, 3, 5):
        params = TreeParams(q)
        for z in (0.0, 0.4, 1.1, params.tau / 2):
            assert abs(phi(z, 0, params) - 1.0) < 1e-14
            for n in range(31):
                assert abs(phi(z, n, params)) <= 1.0 + 1e-12


def test_phi_rejects_negative_distance():
    with pytest.raises(ValueError):
        phi(0.3, -1, TreeParams(2))


def test_delta_p_conventions():
    assert delta_p(1.0) == 0.5
    assert delta_p(2.0) == 0.0
    assert delta_p(float("inf")) == -0.5
    assert abs(delta_p(4.0) + 0.25) < 1e-16
    with pytest.raises(ExponentOutOfRange):
        delta_p(0.5)


def test_strip_classification():
    assert strip_contains(0.3 + 0.1j, 4.0) == "interior"
    assert strip_contains(0.3 + 0.25j, 4.0) == "boundary"
    assert strip_contains(0.3 + 0.4j, 4.0) == "outside"
    assert strip_contains(1.0, 2.0) == "boundary"


def test_spectrum_membership_p2_segment():
    params = TreeParams(2)
    b = 2 * math.sqrt(2) / 3
    assert spectrum_membership(1.0, 2.0, params).classification == "Boundary"
    assert spectrum_membership(1 + b, 2.0, params).classification == "Boundary"
    assert spectrum_membership(1 + b + 0.01, 2.0, params).classification == "Outside"
    assert spectrum_membership(1 + 0.01j, 2.0, params).classification == "Outside"


def test_spectrum_membership_ellipse():
    params = TreeParams(2)
    assert spectrum_membership(gamma(0.0, params), 4.0, params).classification == "Interior"
    boundary = gamma(complex(0.7, delta_p(4.0)), params)
    assert spectrum_membership(boundary, 4.0, params).classification == "Boundary"
    assert spectrum_membership(5.0 + 0j, 4.0, params).classification == "Outside"


def test_ellipse_boundary_points_guards():
    params = TreeParams(2)
    with pytest.raises(ExponentOutOfRange):
        ellipse_boundary_points(2.0, params, 8)
    with pytest.raises(ValueError):
        ellipse_boundary_points(4.0, params, 1)


def test_point_spectrum():
    params = TreeParams(2)
    assert not point_spectrum_contains(1.0, 2.0, params)
    assert not point_spectrum_contains(1.0, 1.5, params)
    assert point_spectrum_contains(gamma(0.0, params), 4.0, params)
    assert not point_spectrum_contains(5.0, 4.0, params)
    with pytest.raises(ExponentOutOfRange):
        point_spectrum_contains(1.0, float("inf"), params)


def test_threshold_homogeneous_and_guarded():
    params = TreeParams(3)
    a = 0.7 - 0.4j
    assert abs(phi_p_threshold(2 * a, 4.0, params) - 2 * phi_p_threshold(a, 4.0, params)) < 1e-14
    assert phi_p_threshold(a, 4.0, params) > 0
    for p in (2.0, 1.0, float("inf")):
        with pytest.raises(ExponentOutOfRange):
            phi_p_threshold(a, p, params)


def test_plancherel_density_symmetric_and_integrates_to_one():
    for q in (2, 3):
        params = TreeParams(q)
        tau = params.tau
        assert plancherel_density(0.0, params) == 0.0
        assert plancherel_density(tau / 2, params) == 0.0
        for s in (0.3, 1.1, 2.0):
            assert abs(
                plancherel_density(s, params) - plancherel_density(-s, params)
            ) < 1e-15
        # trapezoid rule on the period; the integrand is smooth and periodic
        n = 4000
        total = sum(
            plancherel_density(-tau / 2 + k * tau / n, params) for k in range(n)
        ) * (tau / n)
        assert abs(total - 1.0) < 1e-7


def test_canonical_z_range():
    params = TreeParams(2)
    tau = params.tau
    for z in (0.0, 3.7 - 0.2j, -8.1 + 1j, tau / 2):
        w = canonical_z(z, params)
        assert -tau / 2 <= w.real < tau / 2
        assert abs(gamma(w, params) - gamma(z, params)) < 1e-12
