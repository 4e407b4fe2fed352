"""Gauge-quotiented blowup coordinates (z, R) = (a'/a, |a|^2) and shooting.

The scaled first-order system (prime = d/dzeta, B = a')

    A' = B
    B' = -(1 - i*omega_hat)*A - c_hat*B + (1 + i*gamma_hat)*A*|A|^2
         + T*(1 - i*alpha)/m^2 * A,     T = 0 behind, 2 ahead of the trigger,

induces, via z = B/A and R = |A|^2,

    z' = -z^2 - c_hat*z - (1 - i*omega_hat) + (1 + i*gamma_hat)*R + T*(1-i*alpha)/m^2
    R' = R*(z + conj(z)).

All vector fields here are derived mechanically from the first-order system
(the derivation is pinned down by the change-of-variables consistency tests),
and R = 0 is an invariant sphere carrying a Riccati flow.  Near z = infinity
the inverted chart (z_tilde, S) = (1/z, R*|z|^2) is used instead.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .dispersion import CGLParams
from .errors import DegenerateFront, NoWaveTrain, PoleOnPath, WrongBranch
from .scaling import ScaledParams

CHART_SWITCH = 1e3      # leave the z-chart when |z| exceeds this
CHART_HYSTERESIS = 2.0  # re-enter it only when |z| < CHART_SWITCH / hysteresis


@dataclass(frozen=True)
class SphereState:
    z: complex
    R: float


@dataclass
class ShootResult:
    """Base point of the free-front trajectory at amplitude threshold delta."""

    z_star: complex
    delta: float
    trajectory: list  # (zeta, z, R) samples up to the R = delta event
    genericity: float = field(init=False)
    non_generic: bool = field(init=False)

    def __post_init__(self):
        self.genericity = abs(self.z_star + 1.0)
        self.non_generic = self.genericity < 1e-3


@dataclass(frozen=True)
class DeltaZ:
    """Projective distance between front leading edge and stable direction."""

    re: float
    im: float
    z_hat_plus: complex
    z_hat_minus: complex


def _trigger_term(scaled: ScaledParams, params: CGLParams, region: str) -> complex:
    if region == "minus":
        return 0.0 + 0.0j
    return 2.0 / scaled.m**2 * (1.0 - 1j * params.alpha)


def first_order_field(scaled: ScaledParams, params: CGLParams, region: str):
    """Right-hand side for (A, B) as 4 real components."""
    om, ch, gh = scaled.omega_hat, scaled.c_hat, scaled.gamma_hat
    trig = _trigger_term(scaled, params, region)

    def rhs(zeta, y):
        A = y[0] + 1j * y[1]
        B = y[2] + 1j * y[3]
        dB = (-(1.0 - 1j * om) + trig) * A - ch * B \
            + (1.0 + 1j * gh) * A * (A.real**2 + A.imag**2)
        return [B.real, B.imag, dB.real, dB.imag]

    return rhs


def derive_vector_fields(scaled: ScaledParams, params: CGLParams):
    """(z, R) vector fields behind (minus) and ahead (plus) of the trigger.

    Each returned callable maps (z, R) -> (dz, dR) and accepts numpy arrays.
    """
    om, ch, gh = scaled.omega_hat, scaled.c_hat, scaled.gamma_hat

    def make(region):
        trig = _trigger_term(scaled, params, region)

        def fld(z, R):
            dz = -z * z - ch * z - (1.0 - 1j * om) + trig + (1.0 + 1j * gh) * R
            dR = 2.0 * R * np.real(z)
            return dz, dR

        return fld

    return make("minus"), make("plus")


def derive_inverted_fields(scaled: ScaledParams, params: CGLParams):
    """Vector fields in the inverted chart (z_tilde, S) = (1/z, R*|z|^2)."""
    om, ch, gh = scaled.omega_hat, scaled.c_hat, scaled.gamma_hat

    def make(region):
        trig = _trigger_term(scaled, params, region)

        def fld(zt, S):
            # F = B'/A expressed through z = 1/zt, R = S*|zt|^2
            R = S * (zt.real**2 + zt.imag**2)
            F = -(1.0 - 1j * om) + trig + (1.0 + 1j * gh) * R - ch / zt \
                if zt != 0 else None
            if F is None:
                # at the exact inversion point z = infinity: zt' = 1, S' = 0 limit
                return 1.0 + 0.0j, 0.0
            # remove the 1/zt pole: zt' = 1 - zt^2*F is polynomial in zt
            dzt = 1.0 + ch * zt - zt * zt * (
                -(1.0 - 1j * om) + trig + (1.0 + 1j * gh) * R)
            dS = 2.0 * S * (zt * F).real
            return dzt, dS

        return fld

    return make("minus"), make("plus")


def sphere_equilibria(scaled: ScaledParams):
    """Sphere (R = 0) equilibria of the minus field.

    z = -(2 - dc)/2 +/- sqrt(dc^2/4 - dc + i*omega_hat); both collapse to
    z = -1 at dc = omega_hat = 0.
    """
    dc, om = scaled.delta_c_hat, scaled.omega_hat
    root = cmath.sqrt(dc**2 / 4.0 - dc + 1j * om)
    base = -(2.0 - dc) / 2.0
    return base + root, base - root


def z_plus_equilibrium(scaled: ScaledParams, params: CGLParams) -> complex:
    """Stable-direction equilibrium of the plus field on the sphere."""
    om, ch = scaled.omega_hat, scaled.c_hat
    trig = _trigger_term(scaled, params, "plus")
    return -ch / 2.0 - cmath.sqrt(ch**2 / 4.0 - (1.0 - 1j * om) + trig)


def wave_train_equilibrium(scaled: ScaledParams) -> SphereState:
    """Wave-train equilibrium z = i*k_tilde, R = 1 - k_tilde^2 of the minus field.

    k_tilde solves gamma_hat*k^2 + c_hat*k - (gamma_hat + omega_hat) = 0.
    """
    gh, ch, om = scaled.gamma_hat, scaled.c_hat, scaled.omega_hat
    if abs(gh) < 1e-14:
        kt = om / ch
    else:
        disc = ch**2 + 4.0 * gh * (gh + om)
        if disc < 0.0:
            raise NoWaveTrain("complex wavenumber roots")
        r1 = (-ch + math.sqrt(disc)) / (2.0 * gh)
        r2 = (-ch - math.sqrt(disc)) / (2.0 * gh)
        kt = r1 if abs(r1) <= abs(r2) else r2
    if abs(kt) >= 1.0:
        raise NoWaveTrain(f"|k_tilde| = {abs(kt)} >= 1")
    return SphereState(z=1j * kt, R=1.0 - kt**2)


def _field_rhs_real(fld):
    def rhs(zeta, y):
        dz, dR = fld(y[0] + 1j * y[1], y[2])
        return [dz.real, dz.imag, dR]
    return rhs


def linearization(fld, state: SphereState, h: float = 1e-7) -> np.ndarray:
    """Finite-difference Jacobian of a (z, R) field at a state, as real 3x3."""
    y0 = np.array([state.z.real, state.z.imag, state.R])
    rhs = _field_rhs_real(fld)
    f0 = np.array(rhs(0.0, y0))
    J = np.empty((3, 3))
    for j in range(3):
        yp = y0.copy()
        yp[j] += h
        J[:, j] = (np.array(rhs(0.0, yp)) - f0) / h
    return J


def unstable_direction(fld, state: SphereState):
    """Unique unstable eigenpair of the linearization at an equilibrium."""
    J = linearization(fld, state)
    vals, vecs = np.linalg.eig(J)
    idx = [i for i in range(3) if vals[i].real > 1e-8]
    if len(idx) != 1:
        raise NoWaveTrain(f"expected one unstable eigenvalue, got {vals}")
    i = idx[0]
    v = np.real(vecs[:, i])
    return float(vals[i].real), v / np.linalg.norm(v)


def integrate_projective(scaled: ScaledParams, params: CGLParams,
                         z0: complex, R0: float, zeta_span,
                         region: str = "minus",
                         rtol: float = 1e-10, atol: float = 1e-12,
                         max_samples: int = 4000):
    """Integrate the (z, R) flow with automatic chart switching.

    Returns a list of (zeta, z, R) samples; z is reported in the standard
    chart (large but finite values while in the inverted chart).
    """
    f_min, f_plus = derive_vector_fields(scaled, params)
    g_min, g_plus = derive_inverted_fields(scaled, params)
    fld = f_min if region == "minus" else f_plus
    ifld = g_min if region == "minus" else g_plus

    t0, t1 = zeta_span
    out = []
    chart = "z" if abs(z0) < CHART_SWITCH else "inv"
    y = ([z0.real, z0.imag, R0] if chart == "z"
         else [(1 / z0).real, (1 / z0).imag, R0 * abs(z0) ** 2])

    def leave_z(zeta, y):
        return y[0] ** 2 + y[1] ** 2 - CHART_SWITCH**2
    leave_z.terminal = True
    leave_z.direction = 1

    def leave_inv(zeta, y):
        return y[0] ** 2 + y[1] ** 2 - (CHART_HYSTERESIS / CHART_SWITCH) ** 2
    leave_inv.terminal = True
    leave_inv.direction = 1

    t = t0
    while t < t1 - 1e-13:
        if chart == "z":
            rhs, ev = _field_rhs_real(fld), leave_z
        else:
            rhs, ev = _field_rhs_real(ifld), leave_inv
        sol = solve_ivp(rhs, (t, t1), y, method="DOP853", rtol=rtol, atol=atol,
                        events=ev, dense_output=False)
        if not sol.success:
            raise RuntimeError(f"projective integration failed: {sol.message}")
        for i in range(sol.t.size):
            zz = sol.y[0, i] + 1j * sol.y[1, i]
            if chart == "z":
                out.append((sol.t[i], zz, sol.y[2, i]))
            else:
                zi = 1.0 / zz if zz != 0 else complex("inf")
                out.append((sol.t[i], zi, sol.y[2, i] * abs(zz) ** 2))
        if sol.t_events[0].size:
            t = sol.t_events[0][0]
            ye = sol.y_events[0][0]
            w = ye[0] + 1j * ye[1]
            if chart == "z":
                y = [(1 / w).real, (1 / w).imag, ye[2] * abs(w) ** 2]
                chart = "inv"
            else:
                y = [(1 / w).real, (1 / w).imag, ye[2] * abs(w) ** 2]
                chart = "z"
        else:
            break
    if len(out) > max_samples:
        step = len(out) // max_samples + 1
        out = out[::step] + [out[-1]]
    return out


def shoot_free_front(scaled: ScaledParams, params: CGLParams,
                     delta: float = 1e-3, eps_rel: float = 1e-6,
                     zeta_max: float = 200.0,
                     rtol: float = 1e-10, atol: float = 1e-12) -> ShootResult:
    """Track the wave train's unstable manifold down to amplitude R = delta.

    Intended for the free-front parameter point delta_c_hat = omega_hat = 0;
    the base point z at the R = delta event is the shooting quantity z_star.
    """
    eq = wave_train_equilibrium(scaled)
    if not 0.0 < delta < eq.R:
        raise ValueError("delta must lie in (0, R_p)")
    f_min, _ = derive_vector_fields(scaled, params)
    _, v = unstable_direction(f_min, eq)
    rhs = _field_rhs_real(f_min)

    def hit_delta(zeta, y):
        return y[2] - delta
    hit_delta.terminal = True
    hit_delta.direction = -1

    y_eq = np.array([eq.z.real, eq.z.imag, eq.R])
    eps = eps_rel * eq.R
    for sign in (+1.0, -1.0):
        y0 = y_eq + sign * eps * v
        sol = solve_ivp(rhs, (0.0, zeta_max), y0, method="DOP853",
                        rtol=rtol, atol=atol, events=hit_delta)
        if sol.t_events[0].size:
            te = sol.t_events[0][0]
            ye = sol.y_events[0][0]
            traj = [(sol.t[i], sol.y[0, i] + 1j * sol.y[1, i], sol.y[2, i])
                    for i in range(sol.t.size)]
            traj.append((te, ye[0] + 1j * ye[1], ye[2]))
            return ShootResult(z_star=ye[0] + 1j * ye[1], delta=delta,
                               trajectory=traj)
    raise WrongBranch(f"no launch direction reached R = {delta} "
                      f"within zeta_max = {zeta_max}")


def delta_Z(params: CGLParams, z_star: complex, m: float = 1.0) -> DeltaZ:
    """Correction coefficient Delta Z = 1/z_hat_plus - 1/z_hat_minus at M = 0.

    z_hat_minus = z_star + 1 from shooting; z_hat_plus = -sqrt(K) with
    K = (2/m^2)*(1 - i*alpha), the stable direction ahead of the trigger
    written in the shifted sphere coordinate.
    """
    zm = z_star + 1.0
    if abs(zm) < 1e-10:
        raise DegenerateFront("z_star + 1 vanishes: non-generic free front")
    K = 2.0 / m**2 * (1.0 - 1j * params.alpha)
    zp = -cmath.sqrt(K)
    dz = 1.0 / zp - 1.0 / zm
    return DeltaZ(re=dz.real, im=dz.imag, z_hat_plus=zp, z_hat_minus=zm)


def riccati_closed_form(z0: complex, zeta: float, mu: complex = 0.0) -> complex:
    """Explicit solution of z' = -(z+1)^2 + mu on the singular sphere.

    In the shifted variable w = z + 1 the equation is w' = -w^2 + mu with
    w(zeta) = s*tanh(s*zeta + artanh(w0/s)), s = sqrt(mu).  Raises
    PoleOnPath if the solution blows up inside (0, zeta]; the caller must
    then continue in the inverted chart.
    """
    w0 = z0 + 1.0
    if zeta == 0.0:
        return z0
    if mu == 0.0:
        pole = -1.0 / w0 if w0 != 0 else None
        if pole is not None and abs(pole.imag) < 1e-12 and 0.0 < pole.real <= zeta:
            raise PoleOnPath(f"pole at zeta = {pole.real}")
        return -1.0 + w0 / (1.0 + w0 * zeta)
    s = cmath.sqrt(mu)
    if abs(w0 - s) < 1e-15 * max(1.0, abs(s)):
        return -1.0 + s
    if abs(w0 + s) < 1e-15 * max(1.0, abs(s)):
        return -1.0 - s
    C = cmath.atanh(w0 / s)
    # poles of tanh at s*zeta + C = i*pi*(1/2 + k)
    kmax = int(abs(s) * abs(zeta) / math.pi) + 3
    for k in range(-kmax, kmax + 1):
        zp = (1j * math.pi * (0.5 + k) - C) / s
        if abs(zp.imag) < 1e-9 and 1e-12 < zp.real <= zeta:
            raise PoleOnPath(f"pole at zeta = {zp.real}")
    return -1.0 + s * cmath.tanh(s * zeta + C)


def write_trajectory_csv(path, trajectory):
    """Dump (zeta, Re z, Im z, R) samples for plotting."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["zeta", "re_z", "im_z", "R"])
        for zeta, z, R in trajectory:
            w.writerow([f"{zeta:.12g}", f"{z.real:.12g}", f"{z.imag:.12g}",
                        f"{R:.12g}"])
