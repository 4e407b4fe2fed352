"""Boundary-value continuation: certificate, consistency, perturbations."""

import math

import numpy as np
import pytest

from cglfronts import blowup, continuation, dispersion, scaling
from cglfronts.dispersion import CGLParams


@pytest.fixture(scope="module")
def point(params, dz):
    # one converged profile at moderate distance below the spreading speed
    c = dispersion.c_lin(params) - 0.02
    w0 = 2.0 * abs(dz.im) / math.pi * (0.02 / math.sqrt(1.01)) ** 1.5
    return continuation.solve_point(params, c, w0)


def test_certificate_residual_is_tiny(point):
    assert point.residual_norm < 1e-9


def test_boundary_conditions_hold(params, point):
    sc = point.scaled
    eq = blowup.wave_train_equilibrium(sc)
    zp = blowup.z_plus_equilibrium(sc, params)
    ya, yb = point.y[:, 0], point.y[:, -1]
    # left end: close to the wave-train equilibrium (projection BC)
    assert abs(ya[0] + 1j * ya[1] - eq.z) < 1e-5
    # continuity at the trigger
    assert np.allclose(yb[0:3], ya[3:6], atol=1e-9)
    # right end: on the stable direction
    assert abs(yb[3] + 1j * yb[4] - zp) < 1e-9


def test_amplitude_decays_into_the_stable_side(point):
    _, _, R = point.profile()
    assert R[-1] < 1e-6
    assert R.max() < 1.2
    assert np.all(R > 0.0)


def test_omega_hat_positive_and_near_prediction(params, dz, point):
    # leading-order frequency correction, relative error O(delta_c_hat^1/2)
    sc = point.scaled
    lead = 2.0 * abs(dz.im) / math.pi * sc.delta_c_hat**1.5
    assert point.omega_hat > 0.0
    assert abs(point.omega_hat - lead) / lead < 0.3


def test_solution_solves_the_scaled_ode(params, point):
    # spot-check the left-segment derivative against the vector field
    f_min, _ = blowup.derive_vector_fields(point.scaled, params)
    s, y = point.s, point.y
    i = len(s) // 2
    h = s[i + 1] - s[i - 1]
    dz_num = ((y[0, i + 1] - y[0, i - 1]) + 1j * (y[1, i + 1] - y[1, i - 1])) / h
    z = y[0, i] + 1j * y[1, i]
    R = math.exp(y[2, i])
    dz_exact, _ = f_min(z, R)
    # d/ds = zeta_left * (-d/dzeta) on the left segment
    dz_exact = -point.zeta_left * dz_exact
    assert abs(dz_num - dz_exact) < 1e-3 * max(1.0, abs(dz_exact))


def test_perturbed_omega_hat_breaks_the_certificate(params, point):
    res = continuation.assemble_residual(
        point.s, point.y, point.omega_hat + 1e-4, params, point.c,
        point.zeta_left, point.zeta_right)
    assert np.max(np.abs(res)) > 1e-6


def test_mesh_refinement_stability(params, dz, point):
    c = point.c
    w0 = point.omega_hat
    again = continuation.solve_point(params, c, w0, n_nodes=600)
    assert abs(again.omega_hat - point.omega_hat) < 1e-9


def test_xi_star_positive_and_delta_monotone(point):
    x1 = point.xi_star(delta=1e-2)
    x2 = point.xi_star(delta=1e-3)
    assert 0.0 < x2 < x1  # smaller threshold crosses nearer the trigger


def test_wavenumber_against_frequency_matching(params, point):
    pt = continuation.branch_point(point, with_condition=False)
    om = dispersion.nonlinear_dispersion(params, pt.k_tf, pt.c)
    assert abs(om - pt.omega_tf) < 1e-12
    assert math.isnan(pt.condition_number)


def test_short_branch_marches_and_is_monotone(params, dz):
    cl = dispersion.c_lin(params)
    dcs = [0.04, 0.02, 0.01]
    w0 = 2.0 * abs(dz.im) / math.pi * (dcs[0] / math.sqrt(1.01)) ** 1.5
    branch = continuation.continue_in_c(params, [cl - d for d in dcs], w0,
                                        with_condition=False)
    assert len(branch.points) == 3
    oms = [p.omega_hat for p in branch.points]
    assert oms[0] > oms[1] > oms[2] > 0.0
    ks = [p.k_tf for p in branch.points]
    assert ks[0] < ks[1] < ks[2] < dispersion.k_lin(params)


def test_branch_csv_round_trip(tmp_path, params, point):
    pt = continuation.branch_point(point, with_condition=False)
    branch = continuation.Branch(points=[pt])
    path = tmp_path / "branch.csv"
    branch.write_csv(path)
    lines = path.read_text().strip().splitlines()
    assert lines[0].startswith("c,delta_c,omega_hat")
    assert len(lines) == 2
    vals = [float(v) for v in lines[1].split(",")[:6]]
    assert abs(vals[0] - pt.c) < 1e-10
