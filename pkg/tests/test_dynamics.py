"""Chaos classification, intervals, witnesses, eigen-orbit trajectories."""
import math

import numpy as np
import pytest

from treechaos import (
    AffineGenerator,
    SeriesGenerator,
    TreeParams,
    classify_affine,
    classify_analytic,
    delta_p,
    find_periodic_witness,
    gamma,
    h_extrema,
    heat_interval,
    orbit_norm_trajectory,
    phi_p_threshold,
    schrodinger_interval,
)
from treechaos.dynamics import (
    CHAOTIC,
    INCONCLUSIVE_NUMERIC,
    NOT_CHAOTIC_NO_PERIODIC_POINTS,
    NOT_CHAOTIC_NO_SEPARABILITY,
    NOT_HYPERCYCLIC,
)
from treechaos.errors import (
    ConstantComposition,
    ExponentOutOfRange,
    NoRootFound,
    ZeroCoefficient,
)


def test_heat_interval_frozen_values():
    params = TreeParams(2)
    lo, hi = heat_interval(4.0, params)
    assert abs(lo - 0.04300001816328336) < 1e-14
    assert abs(hi - 1.9569999818367165) < 1e-14


def test_heat_shift_verdicts():
    params = TreeParams(2)
    assert classify_affine(4.0, -1.0, 0.0, params).classification == NOT_HYPERCYCLIC
    assert classify_affine(4.0, -1.0, 1.0, params).classification == CHAOTIC
    assert classify_affine(4.0, -1.0, 2.5, params).classification == NOT_HYPERCYCLIC


def test_affine_interval_matches_heat_interval():
    for q in (2, 3, 5):
        params = TreeParams(q)
        for p in (2.5, 3.0, 4.0, 8.0):
            assert classify_affine(p, -1.0, 0.0, params).interval == heat_interval(
                p, params
            )


def test_schrodinger_interval_is_symmetric():
    for q in (2, 3):
        params = TreeParams(q)
        for p in (3.0, 4.0):
            lo, hi = schrodinger_interval(p, params)
            thr = phi_p_threshold(1j, p, params)
            assert lo < 0 < hi
            assert abs(lo + thr) < 1e-13 and abs(hi - thr) < 1e-13
    with pytest.raises(ExponentOutOfRange):
        schrodinger_interval(2.0, TreeParams(2))


def test_chaotic_interval_grows_with_p():
    params = TreeParams(2)
    prev = heat_interval(2.5, params)
    for p in (3.0, 4.0, 8.0):
        cur = heat_interval(p, params)
        assert cur[0] < prev[0] and cur[1] > prev[1]
        prev = cur


def test_subcritical_and_nonseparable_exponents():
    params = TreeParams(2)
    for p in (1.0, 1.5, 2.0):
        v = classify_affine(p, -1.0, 1.0, params)
        assert v.classification == NOT_CHAOTIC_NO_PERIODIC_POINTS
    v = classify_affine(float("inf"), -1.0, 1.0, params)
    assert v.classification == NOT_CHAOTIC_NO_SEPARABILITY
    with pytest.raises(ZeroCoefficient):
        classify_affine(4.0, 0.0, 1.0, params)


def test_imaginary_shift_does_not_change_verdict():
    params = TreeParams(2)
    a = classify_affine(4.0, -1.0, 1.0, params)
    b = classify_affine(4.0, -1.0, 1.0 + 7.3j, params)
    assert a.classification == b.classification == CHAOTIC
    assert a.interval == b.interval


def test_classify_analytic_affine_agrees_with_closed_form():
    params = TreeParams(2)
    chaotic = classify_analytic(4.0, AffineGenerator(-1.0, 1.0), params)
    assert chaotic.classification == CHAOTIC
    assert chaotic.evidence["grid_signs"] == "both"
    assert chaotic.interval == heat_interval(4.0, params)
    not_hc = classify_analytic(4.0, AffineGenerator(-1.0, 5.0), params)
    assert not_hc.classification == NOT_HYPERCYCLIC


def test_classify_analytic_schrodinger_generator():
    params = TreeParams(2)
    v = classify_analytic(4.0, AffineGenerator(1j, 0.0), params)
    assert v.classification == CHAOTIC


def test_classify_analytic_inconclusive_for_one_signed_series():
    params = TreeParams(2)
    v = classify_analytic(4.0, SeriesGenerator((10.0 + 0j, 1.0 + 0j)), params)
    assert v.classification == INCONCLUSIVE_NUMERIC
    assert v.evidence["grid_signs"] == "positive"


def test_classify_analytic_constant_guard():
    params = TreeParams(2)
    with pytest.raises(ConstantComposition):
        classify_analytic(4.0, SeriesGenerator((5.0 + 0j,)), params)


def test_periodic_witness_for_schrodinger_generator():
    params = TreeParams(2)
    w = find_periodic_witness(4.0, AffineGenerator(1j, 0.0), params)
    assert abs(w.z0.z) < 1e-12
    assert abs(w.t0 - 2 * math.pi / gamma(0.0, params).real) < 1e-8
    assert w.residual < 1e-10


def test_periodic_witness_refused_for_small_p():
    params = TreeParams(2)
    for p in (1.0, 2.0, float("inf")):
        with pytest.raises(NoRootFound):
            find_periodic_witness(p, AffineGenerator(1j, 0.0), params)


def test_h_extrema_against_grid():
    params = TreeParams(2)
    p = 4.0
    d = delta_p(p)
    s = np.linspace(-params.tau / 2, params.tau / 2, 200001)
    for a, b in ((-1.0 + 0j, 1.0), (0.6 - 0.9j, -0.3), (0.0 + 1j, 0.0)):
        z = s + 1j * d
        lq = params.log_q
        g = 1.0 - (np.exp((0.5 + 1j * z) * lq) + np.exp((0.5 - 1j * z) * lq)) / (
            params.q + 1
        )
        h = (a * g).real + b
        h_max, h_min, s_max, s_min = h_extrema(a, b, p, params)
        assert abs(h_max - h.max()) < 1e-8
        assert abs(h_min - h.min()) < 1e-8
        # the reported arg locations attain the extrema
        at_max = (a * gamma(complex(s_max, d), params)).real + b
        at_min = (a * gamma(complex(s_min, d), params)).real + b
        assert abs(at_max - h_max) < 1e-12
        assert abs(at_min - h_min) < 1e-12


def test_h_extrema_locations_for_pure_rotation():
    # a = i: the oscillation is a pure sine, extremes at the quarter periods
    params = TreeParams(2)
    _, _, s_max, s_min = h_extrema(1j, 0.0, 4.0, params)
    assert abs(abs(s_max) - params.tau / 4) < 1e-12
    assert abs(abs(s_min) - params.tau / 4) < 1e-12


def test_orbit_norm_trajectory_tracks_prediction():
    params = TreeParams(2)
    rows = orbit_norm_trajectory(
        AffineGenerator(-0.5, 0.0), 0.0, [0.5, 1.0, 2.0], 4.0, params
    )
    for t, predicted, measured in rows:
        assert abs(predicted - measured) < 1e-10
        assert predicted < 1.0  # decaying regime
