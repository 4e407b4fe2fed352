"""Acceptance gate: one test per headline capability, at fixed tolerances.

Heavy artifacts (the continuation branch, the long simulations) are module
fixtures shared between criteria; each test line in the verbose report is
the pass/fail verdict for one criterion.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import solve_ivp
from scipy.optimize import brentq, curve_fit

from cglfronts import blowup, continuation, dispersion, scaling, simulate
from cglfronts.dispersion import CGLParams
from cglfronts.scaling import ScaledParams

ALPHA_SQ = 1.0 + 0.1**2  # 1 + alpha^2 at the reference parameters


@pytest.fixture(scope="module")
def dz_ref(params, scaled_linear):
    """Correction coefficient from a deep shot (delta = 1e-5)."""
    shot = blowup.shoot_free_front(scaled_linear, params, delta=1e-5)
    return blowup.delta_Z(params, shot.z_star)


@pytest.fixture(scope="module")
def branch(params, dz_ref):
    """Nine-point continuation branch over delta_c in [1e-3, 1e-1]."""
    t0 = time.perf_counter()
    cl = dispersion.c_lin(params)
    dcs = np.geomspace(1e-1, 1e-3, 9)
    w0 = 2.0 * abs(dz_ref.im) / math.pi * (dcs[0] / math.sqrt(ALPHA_SQ)) ** 1.5
    br = continuation.continue_in_c(params, [cl - d for d in dcs], w0,
                                    with_condition=False)
    return {"dcs": dcs, "branch": br, "elapsed": time.perf_counter() - t0}


@pytest.fixture(scope="module")
def free_front(params):
    """Wake measurements above the spreading speed, three trigger speeds."""
    t0 = time.perf_counter()
    cl = dispersion.c_lin(params)
    meas = [simulate.free_front_run(params, f * cl) for f in (1.05, 1.10, 1.15)]
    return {"meas": meas, "elapsed": time.perf_counter() - t0}


@pytest.fixture(scope="module")
def cross_validation(params, dz_ref):
    """Simulated vs boundary-value wake wavenumber on eight speeds below c_lin."""
    t0 = time.perf_counter()
    cl = dispersion.c_lin(params)
    cs = np.linspace(1.8, 0.995 * cl, 8)
    w0 = 2.0 * abs(dz_ref.im) / math.pi * ((cl - cs[0]) / math.sqrt(ALPHA_SQ)) ** 1.5
    br = continuation.continue_in_c(params, list(cs), w0, with_condition=False)
    rows = []
    for pt in br.points:
        sim = simulate.triggered_run(params, pt.c, t_end=600.0, dt=1e-2)
        rows.append((pt.c, sim.k_mean, pt.k_tf))
    return {"rows": rows, "elapsed": time.perf_counter() - t0}


def test_01_closed_form_spreading_matches_saddle_solver():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(50):
        p = CGLParams(alpha=rng.uniform(-2.0, 2.0), gamma=0.0)
        lin = dispersion.linear_spreading(p)
        c, lam, nu = dispersion.double_root_solve(p)
        worst = max(worst, abs(c - lin.c_lin), abs(lam - 1j * lin.omega_lin),
                    abs(nu - lin.nu_lin))
    elapsed = time.perf_counter() - t0
    assert worst < 1e-10, f"worst deviation {worst:.2e}"
    assert elapsed < 1.0, f"took {elapsed:.2f}s"


def test_02_absolute_spectrum_crossing_frequency():
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        p = CGLParams(alpha=rng.uniform(-2.0, 2.0), gamma=0.0)
        c = rng.uniform(0.1, 0.999) * dispersion.c_lin(p)
        om = dispersion.omega_abs(p, c)
        r1, r2 = dispersion.spatial_roots(p, 1j * om, c)
        worst = max(worst, abs(r1.real - r2.real))
    # approaching the spreading speed the crossing frequency tends to the
    # marginal frequency alpha
    p = CGLParams(alpha=-0.7, gamma=0.0)
    edge = dispersion.omega_abs(p, dispersion.c_lin(p) * (1.0 - 1e-13))
    elapsed = time.perf_counter() - t0
    assert worst < 1e-10, f"worst real-part split {worst:.2e}"
    assert abs(edge - p.alpha) < 1e-10
    assert elapsed < 1.0, f"took {elapsed:.2f}s"


def test_03_scaling_normalization_and_round_trip(params, scaled_linear):
    assert abs(scaled_linear.c_hat - 2.0) < 1e-12
    assert abs(scaled_linear.m - 1.0) < 1e-12
    assert abs(scaled_linear.omega_hat) < 1e-12
    rng = np.random.default_rng(3)
    for _ in range(20):
        p = CGLParams(alpha=rng.uniform(-0.9, 0.9), gamma=rng.uniform(-0.9, 0.9))
        c = rng.uniform(0.5, 2.5)
        omega = rng.uniform(-1.0, 1.0)
        sc = scaling.to_scaled(p, c, omega)
        c2, om2 = scaling.from_scaled(p, sc)
        assert abs(c2 - c) < 1e-12
        assert abs(om2 - omega) < 1e-12


def test_04_blowup_coordinates_consistent_with_first_order_system(params):
    # push-forward check: (A, B) integration against the derived (z, R)
    # flow; generic spatial data blows up in finite zeta (the amplitude
    # equation is spatially singular), so each comparison runs to 90% of
    # the blow-up time detected on the first-order side, capped at 10
    rng = np.random.default_rng(41)
    t0 = time.perf_counter()

    def guard(zeta, y):
        return y[0]**2 + y[1]**2 + y[2]**2 + y[3]**2 - 1e4
    guard.terminal = True
    guard.direction = 1

    worst, n_done = 0.0, 0
    while n_done < 49:
        sc = ScaledParams(
            c_hat=rng.uniform(1.0, 3.0), delta_c_hat=rng.uniform(-0.5, 0.5),
            omega_hat=rng.uniform(-0.5, 0.5), gamma_hat=rng.uniform(-1.0, 1.0),
            m=rng.uniform(0.5, 1.5), l=1.0, shift_rate=0.0, zeta_scale=1.0)
        region = "minus" if rng.random() < 0.5 else "plus"
        A0 = complex(rng.normal(), rng.normal()) * 0.4
        B0 = complex(rng.normal(), rng.normal()) * 0.4
        if abs(A0) < 0.1:
            continue
        rhs = blowup.first_order_field(sc, params, region)
        y0 = [A0.real, A0.imag, B0.real, B0.imag]
        probe = solve_ivp(rhs, (0.0, 10.0), y0, method="DOP853",
                          rtol=1e-10, atol=1e-12, events=guard)
        span = 0.9 * probe.t_events[0][0] if probe.t_events[0].size else 10.0
        sol = solve_ivp(rhs, (0.0, span), y0, method="DOP853",
                        rtol=1e-13, atol=1e-15)
        A1 = sol.y[0, -1] + 1j * sol.y[1, -1]
        B1 = sol.y[2, -1] + 1j * sol.y[3, -1]
        out = blowup.integrate_projective(sc, params, B0 / A0, abs(A0) ** 2,
                                          (0.0, span), region=region)
        _, z1, R1 = out[-1]
        worst = max(worst, abs(z1 - B1 / A1) / max(1.0, abs(B1 / A1)),
                    abs(R1 - abs(A1) ** 2) / max(1.0, abs(A1) ** 2))
        n_done += 1
    # 50th setup: near-real data passing through a pole of z = B/A, so the
    # integration must go through the inverted chart
    p0 = CGLParams(alpha=0.0, gamma=0.0)
    sc0 = ScaledParams(c_hat=0.0, delta_c_hat=2.0, omega_hat=0.0,
                       gamma_hat=0.0, m=1.0, l=1.0, shift_rate=0.0,
                       zeta_scale=1.0)
    A0, B0 = 0.1 + 0j, -0.3 + 2e-5j
    rhs = blowup.first_order_field(sc0, p0, "minus")
    sol = solve_ivp(rhs, (0.0, 1.0), [A0.real, A0.imag, B0.real, B0.imag],
                    method="DOP853", rtol=1e-13, atol=1e-15)
    A1 = sol.y[0, -1] + 1j * sol.y[1, -1]
    B1 = sol.y[2, -1] + 1j * sol.y[3, -1]
    out = blowup.integrate_projective(sc0, p0, B0 / A0, abs(A0) ** 2, (0.0, 1.0))
    _, z1, R1 = out[-1]
    assert max(abs(z) for _, z, _ in out) > blowup.CHART_SWITCH
    worst = max(worst, abs(z1 - B1 / A1) / max(1.0, abs(B1 / A1)),
                abs(R1 - abs(A1) ** 2))
    # closed-form Riccati oracle on the invariant sphere
    for z0 in (0.5 + 0.3j, -0.2 - 0.1j, 2.0 + 0j):
        z_exact = blowup.riccati_closed_form(z0, 0.7, mu=0.0)
        sc1 = ScaledParams(c_hat=2.0, delta_c_hat=0.0, omega_hat=0.0,
                           gamma_hat=0.0, m=1.0, l=1.0, shift_rate=0.0,
                           zeta_scale=1.0)
        out = blowup.integrate_projective(sc1, p0, z0, 0.0, (0.0, 0.7))
        worst = max(worst, abs(out[-1][1] - z_exact))
    elapsed = time.perf_counter() - t0
    assert worst < 1e-8, f"worst deviation {worst:.2e}"
    assert elapsed < 30.0, f"took {elapsed:.1f}s"


def test_05_shooting_genericity_and_delta_independence(params):
    t0 = time.perf_counter()
    # genericity: the shot never lands on the degenerate point z = -1
    min_gen = math.inf
    for gh in np.arange(0.0, 10.0 + 1e-9, 0.1):
        sc = ScaledParams(c_hat=2.0, delta_c_hat=0.0, omega_hat=0.0,
                          gamma_hat=float(gh), m=1.0, l=1.0, shift_rate=0.0,
                          zeta_scale=1.0)
        shot = blowup.shoot_free_front(sc, params, delta=1e-3)
        min_gen = min(min_gen, shot.genericity)
    assert min_gen > 1e-3, f"minimum |z*+1| = {min_gen:.2e}"
    # delta-independence of the imaginary part of the correction coefficient
    sc = scaling.scaled_at_linear_point(params)
    ims = []
    for d in (1e-2, 1e-3, 1e-4):
        shot = blowup.shoot_free_front(sc, params, delta=d)
        ims.append(blowup.delta_Z(params, shot.z_star).im)
    spread = max(ims) - min(ims)
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0, f"took {elapsed:.1f}s"
    assert spread < 1e-4, (
        f"imaginary part drifts by {spread:.2e} across delta in [1e-4, 1e-2] "
        f"(values {ims}); it converges only like delta^(2/3), so the stated "
        f"bound holds asymptotically (halving delta at 1e-4 changes the "
        f"shift invariant by 8e-5) but not across this range")


def test_06_simulator_preserves_exact_wave_trains(params):
    t0 = time.perf_counter()
    grid = simulate.Grid(length_left=20.0, length_right=20.0, n_points=512)
    k = simulate.compatible_wavenumber(grid, 0.3)
    c = 1.9
    dt = 1e-3
    state = simulate.exact_wavetrain(params, k, grid)
    amp0 = np.abs(state.a).copy()
    stp = simulate._Stepper(params, c, grid, dt, uniform_chi=1.0)
    a = state.a.copy()
    probe = []
    for n in range(10000):
        a = stp(a)
        probe.append(((n + 1) * dt, a[64]))
    drift = np.max(np.abs(np.abs(a) - amp0))
    assert drift < 1e-6, f"amplitude drift {drift:.2e}"
    om = simulate.measure_frequency(probe, 1.0)
    om_exact = dispersion.nonlinear_dispersion(params, k, c)
    assert abs(om - om_exact) < 1e-3, f"frequency off by {abs(om-om_exact):.2e}"
    # gauge equivariance: a global phase commutes with the time step
    phi = 0.8421
    b = state.a * np.exp(1j * phi)
    for _ in range(100):
        b = stp(b)
    a2 = state.a.copy()
    for _ in range(100):
        a2 = stp(a2)
    gauge = np.max(np.abs(b - a2 * np.exp(1j * phi)))
    elapsed = time.perf_counter() - t0
    assert gauge < 1e-12, f"gauge error {gauge:.2e}"
    assert elapsed < 60.0, f"took {elapsed:.1f}s"


def test_07_free_front_selects_the_linear_wavenumber(params, free_front):
    kl = dispersion.k_lin(params)
    ks = [m.k_mean for m in free_front["meas"]]
    for k in ks:
        assert abs(k - kl) / kl < 0.01, f"k = {k:.5f} vs k_lin = {kl:.5f}"
    spread = (max(ks) - min(ks)) / np.mean(ks)
    assert spread < 0.01, f"speed dependence {spread:.3%}"
    assert free_front["elapsed"] < 600.0


def test_08_simulation_matches_boundary_value_solver(cross_validation):
    worst = 0.0
    for c, k_sim, k_bvp in cross_validation["rows"]:
        rel = abs(k_sim - k_bvp) / abs(k_bvp)
        worst = max(worst, rel)
    assert worst <= 0.005, (
        f"worst relative wavenumber mismatch {worst:.3%}; "
        f"rows: {cross_validation['rows']}")
    assert cross_validation["elapsed"] < 1800.0


def test_09_frequency_correction_follows_three_halves_law(params, dz_ref,
                                                          branch):
    dcs = branch["dcs"]
    dws = [pt.omega_tf - dispersion.omega_abs(params, pt.c)
           for pt in branch["branch"].points]
    slope, logpref = np.polyfit(np.log(dcs), np.log(np.abs(dws)), 1)
    pref = math.exp(logpref)
    theory = 2.0 * abs(dz_ref.im) / (math.pi * ALPHA_SQ ** 0.75)
    assert abs(slope - 1.5) < 0.1, f"exponent {slope:.4f}"
    assert abs(pref - theory) / theory < 0.1, (
        f"prefactor {pref:.5f} vs {theory:.5f}")
    assert branch["elapsed"] < 600.0


def test_10_interface_recedes_like_inverse_square_root(branch):
    # the trigger-to-interface distance carries an O(1) offset from the
    # matching region, so the offset is a fitted parameter; the fit runs
    # over the asymptotic half of the branch
    dcs = branch["dcs"]
    xis = np.array([pt.xi_star for pt in branch["branch"].points])
    sel = dcs <= 1.1e-2

    def law(dc, coeff, power, offset):
        return coeff * dc ** power + offset

    (coeff, power, _), _ = curve_fit(law, dcs[sel], xis[sel],
                                     p0=[3.1, -0.5, -9.0])
    theory = math.pi * ALPHA_SQ ** 0.75
    assert abs(power + 0.5) < 0.1, f"exponent {power:.4f}"
    assert abs(coeff - theory) / theory < 0.1, (
        f"coefficient {coeff:.4f} vs {theory:.4f}")


def test_11_two_bump_branch_has_half_the_frequency_correction(params, dz_ref):
    t0 = time.perf_counter()
    cl = dispersion.c_lin(params)

    def gap(c):
        return scaling.to_scaled(
            params, c, dispersion.omega_abs(params, c)).delta_c_hat - 1e-2

    c = brentq(gap, 1.7, cl - 1e-6)
    w1 = 2.0 * abs(dz_ref.im) / math.pi * 1e-2 ** 1.5
    p1 = continuation.solve_point(params, c, w1, j=1, n_nodes=900)
    p2 = continuation.solve_point(params, c, w1 / 2.0, j=2, n_nodes=1400)
    ratio = p2.omega_hat / p1.omega_hat
    elapsed = time.perf_counter() - t0
    assert abs(ratio - 0.5) < 0.2, f"ratio {ratio:.4f}"
    assert elapsed < 300.0, f"took {elapsed:.1f}s"
