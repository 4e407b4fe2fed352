"""Closed-form trigger-front predictions: internal consistency and scaling."""

import math

import pytest

from cglfronts import dispersion, predict
from cglfronts.dispersion import CGLParams
from cglfronts.errors import ExpansionUnavailable, SpeedTooLarge


def test_exact_wavenumber_inverts_the_dispersion_relation(params, dz):
    for dc in (1e-3, 1e-2, 1e-1):
        c = dispersion.c_lin(params) - dc
        pred = predict.make_prediction(params, c, dz)
        om = dispersion.nonlinear_dispersion(params, pred.k_tf_exact, c)
        assert abs(om - pred.omega_tf) < 1e-12


def test_frequency_correction_scales_three_halves(params, dz):
    # halving delta_c divides the correction by 2^(3/2)
    cl = dispersion.c_lin(params)
    corr = []
    for dc in (4e-3, 2e-3):
        c = cl - dc
        om = predict.predict_frequency(params, c, 1, dz)
        corr.append(om - dispersion.omega_abs(params, c))
    assert corr[0] > 0.0
    assert abs(corr[0] / corr[1] - 2.0**1.5) < 1e-10


def test_frequency_correction_inverse_in_j(params, dz):
    c = dispersion.c_lin(params) - 1e-2
    base = dispersion.omega_abs(params, c)
    c1 = predict.predict_frequency(params, c, 1, dz) - base
    c2 = predict.predict_frequency(params, c, 2, dz) - base
    assert abs(c2 / c1 - 0.5) < 1e-12


def test_expansion_matches_exact_to_three_halves_order(params, dz):
    # the truncated series carries the delta_c^(3/2) term, so the remainder
    # is O(delta_c^2): quartering delta_c shrinks it ~16x
    cl = dispersion.c_lin(params)
    rem = []
    for dc in (4e-2, 1e-2):
        pred = predict.make_prediction(params, cl - dc, dz)
        rem.append(abs(pred.k_tf_expansion - pred.k_tf_exact))
    ratio = rem[0] / rem[1]
    assert 8.0 < ratio < 32.0


def test_wavenumber_approaches_k_lin(params, dz):
    pred = predict.make_prediction(params, dispersion.c_lin(params) - 1e-6, dz)
    assert abs(pred.k_tf_exact - dispersion.k_lin(params)) < 1e-4


def test_interface_distance_scaling(params, dz):
    cl = dispersion.c_lin(params)
    a2 = 1.0 + params.alpha**2
    x1 = predict.predict_interface(params, cl - 1e-4, dz)
    x2 = predict.predict_interface(params, cl - 4e-4, dz)
    # leading term halves when delta_c quadruples; offset cancels in the diff
    lead1 = math.pi * a2**0.75 * 1e2
    assert x1 > x2 > 0.0
    assert abs((x1 - x2) - lead1 / 2.0) < 1e-9


def test_interface_scales_linearly_in_j(params, dz):
    cl = dispersion.c_lin(params)
    a2 = 1.0 + params.alpha**2
    x1 = predict.predict_interface(params, cl - 1e-2, dz, j=1)
    x2 = predict.predict_interface(params, cl - 1e-2, dz, j=2)
    assert abs((x2 - x1) - math.pi * a2**0.75 * 10.0) < 1e-12


def test_speed_above_spreading_rejected(params, dz):
    with pytest.raises(SpeedTooLarge):
        predict.make_prediction(params, dispersion.c_lin(params), dz)


def test_equal_parameters_fall_back_to_exact(dz):
    p = CGLParams(alpha=-0.2, gamma=-0.2)
    with pytest.raises(ExpansionUnavailable):
        predict.g1(p)
    pred = predict.make_prediction(p, dispersion.c_lin(p) - 1e-2, dz)
    assert math.isnan(pred.k_tf_expansion)
    assert math.isfinite(pred.k_tf_exact)


def test_g1_matches_implicit_differentiation(params):
    # dk/dc along Omega(k; c) = omega_abs(c), by finite differences at c_lin
    cl = dispersion.c_lin(params)
    h = 1e-6

    def k_of_c(c):
        return dispersion.k_from_omega(params, dispersion.omega_abs(params, c), c)

    fd = (k_of_c(cl - h) - k_of_c(cl - 3 * h)) / (2 * h)
    # k = k_lin - g1*delta_c + ..., so dk/dc -> +g1 as delta_c -> 0
    assert abs(fd - predict.g1(params)) < 1e-4
