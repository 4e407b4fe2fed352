"""Boundary-value continuation of trigger-front heteroclinics.

The front profile is computed in the gauge-quotiented coordinates of the
blowup module as a two-segment boundary value problem on [zeta_left, 0] and
[0, zeta_right] with the trigger at zeta = 0 and the scaled frequency
omega_hat as a free parameter:

  * left end: projection condition onto the unstable eigendirection of the
    wave-train equilibrium (2 real conditions),
  * zeta = 0: continuity (3 conditions),
  * right end: z pinned at the stable-direction equilibrium z_plus
    (2 conditions), amplitude free.

That is 7 conditions for 6 ODE components plus 1 free parameter: square.
Internally the amplitude is carried as L = log R, which makes the amplitude
equation linear (L' = 2 Re z) and keeps the deep near-sphere dip of R
(down to e^{-2 pi j / M}) well-scaled.  The collocation solve is delegated
to scipy's solve_bvp; an independently assembled Lobatto-IIIA residual
serves as the convergence certificate.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_bvp, solve_ivp
from scipy.interpolate import interp1d

from . import blowup, dispersion, scaling
from .dispersion import CGLParams
from .errors import CGLError, NewtonDiverged, StepFailure
from .scaling import ScaledParams


@dataclass(frozen=True)
class BVPMesh:
    """Two-segment mesh with the trigger interface at zeta = 0."""

    zeta_left: float
    zeta_right: float
    n_nodes: int

    def __post_init__(self):
        if not (self.zeta_left < 0.0 < self.zeta_right):
            raise ValueError("need zeta_left < 0 < zeta_right")

    @property
    def s(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n_nodes)

    @property
    def nodes(self) -> np.ndarray:
        """Merged physical zeta nodes, including 0."""
        left = self.zeta_left * (1.0 - self.s)
        right = self.zeta_right * self.s
        return np.concatenate([left, right[1:]])


@dataclass
class BVPSolution:
    """A converged trigger-front profile with its free frequency."""

    s: np.ndarray          # shared segment parameter in [0, 1]
    y: np.ndarray          # 6 x n: (Re z, Im z, log R) left then right segment
    omega_hat: float
    c: float
    params: CGLParams
    scaled: ScaledParams
    zeta_left: float
    zeta_right: float
    residual_norm: float

    def profile(self):
        """Merged (zeta, z, R) arrays over both segments."""
        zl = self.zeta_left * (1.0 - self.s)  # already increasing: zeta_left -> 0
        zr = self.zeta_right * self.s
        zeta = np.concatenate([zl, zr[1:]])
        z = np.concatenate([self.y[0] + 1j * self.y[1],
                            self.y[3, 1:] + 1j * self.y[4, 1:]])
        R = np.exp(np.concatenate([self.y[2], self.y[5, 1:]]))
        return zeta, z, R

    def xi_star(self, delta: float = 1e-3) -> float:
        """Trigger-to-interface distance from the R = delta^2 threshold.

        Implements the running-supremum interface definition in the scaled
        profile and converts back to physical length units (positive result:
        the interface trails the trigger).
        """
        zeta, _, R = self.profile()
        thresh = delta**2
        suffix = np.maximum.accumulate(R[::-1])[::-1]
        below = suffix < thresh
        if not below.any() or below[0]:
            raise ValueError("profile does not cross the interface threshold")
        i = int(np.argmax(below))
        s0, s1 = suffix[i - 1], suffix[i]
        frac = (math.log(s0) - math.log(thresh)) / (math.log(s0) - math.log(s1))
        zc = zeta[i - 1] + frac * (zeta[i] - zeta[i - 1])
        a2 = 1.0 + self.params.alpha**2
        return -zc * math.sqrt(a2) / self.scaled.m


@dataclass
class BranchPoint:
    c: float
    delta_c: float
    omega_hat: float
    omega_tf: float
    k_tf: float
    xi_star: float
    residual: float
    condition_number: float
    solution: BVPSolution


@dataclass
class Branch:
    points: list

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["c", "delta_c", "omega_hat", "omega_tf", "k_tf",
                        "xi_star", "residual", "condition_number"])
            for p in self.points:
                w.writerow([f"{v:.12g}" for v in
                            (p.c, p.delta_c, p.omega_hat, p.omega_tf, p.k_tf,
                             p.xi_star, p.residual, p.condition_number)])


def _log_fields(scaled: ScaledParams, params: CGLParams):
    """Minus/plus fields in (Re z, Im z, L = log R); array-compatible."""
    f_min, f_plus = blowup.derive_vector_fields(scaled, params)

    def make(fld):
        def rhs(y):
            z = y[0] + 1j * y[1]
            # clip keeps stray Newton iterates finite; converged profiles
            # have log R well below the cap
            R = np.exp(np.minimum(y[2], 50.0))
            dz, _ = fld(z, R)
            return np.array([np.real(dz), np.imag(dz), 2.0 * np.real(z)])
        return rhs

    return make(f_min), make(f_plus)


def _equilibrium_data(params: CGLParams, c: float, omega_hat: float):
    """Scaled parameters, wave-train equilibrium (in log form), its unstable
    eigenvector complement, and z_plus, all at fixed physical c."""
    scaled = scaling.scaled_from_c_omega_hat(params, c, omega_hat)
    eq = blowup.wave_train_equilibrium(scaled)
    f_min, _ = blowup.derive_vector_fields(scaled, params)
    lam, v = blowup.unstable_direction(f_min, eq)
    # eigenvector of the (z, log R) system: similarity transform by 1/R
    v_log = np.array([v[0], v[1], v[2] / eq.R])
    v_log /= np.linalg.norm(v_log)
    # orthonormal complement of the unstable direction
    q, _ = np.linalg.qr(np.column_stack([v_log, np.eye(3)]))
    W = q[:, 1:3].T
    y_eq = np.array([eq.z.real, eq.z.imag, math.log(eq.R)])
    zp = blowup.z_plus_equilibrium(scaled, params)
    return scaled, y_eq, lam, v_log, W, zp


def _make_system(params: CGLParams, c: float, zeta_left: float,
                 zeta_right: float):
    """fun(s, y, p) and bc(ya, yb, p) for solve_bvp; p = [omega_hat]."""

    def fun(s, y, p):
        try:
            scaled = scaling.scaled_from_c_omega_hat(params, c, float(p[0]))
        except CGLError:
            return np.zeros_like(np.vstack([y[0:3], y[3:6]]))
        rhs_min, rhs_plus = _log_fields(scaled, params)
        dyl = -zeta_left * rhs_min(y[0:3])
        dyr = zeta_right * rhs_plus(y[3:6])
        return np.vstack([dyl, dyr])

    def bc(ya, yb, p):
        try:
            _, y_eq, _, _, W, zp = _equilibrium_data(params, c, float(p[0]))
        except CGLError:
            # stray Newton iterate left the admissible parameter region;
            # a large finite residual steers the iteration back
            return np.full(7, 1e3)
        left = W @ (ya[0:3] - y_eq)
        cont = yb[0:3] - ya[3:6]
        right = np.array([yb[3] - zp.real, yb[4] - zp.imag])
        return np.concatenate([left, cont, right])

    return fun, bc


def assemble_residual(s: np.ndarray, y: np.ndarray, omega_hat: float,
                      params: CGLParams, c: float, zeta_left: float,
                      zeta_right: float) -> np.ndarray:
    """Independent Lobatto-IIIA (Simpson) residual of a discrete solution.

    Per interval: y_{i+1} - y_i - h/6 (f_i + 4 f_mid + f_{i+1}) with the
    midpoint from the cubic Hermite interpolant, normalized by the interval
    length; boundary conditions appended.  Used as the convergence
    certificate and for the condition-number diagnostic.
    """
    fun, bc = _make_system(params, c, zeta_left, zeta_right)
    p = np.array([omega_hat])
    f = fun(s, y, p)
    h = np.diff(s)
    y0, y1 = y[:, :-1], y[:, 1:]
    f0, f1 = f[:, :-1], f[:, 1:]
    y_mid = 0.5 * (y0 + y1) + h / 8.0 * (f0 - f1)
    s_mid = s[:-1] + 0.5 * h
    f_mid = fun(s_mid, y_mid, p)
    scale = 1.0 + np.maximum(np.abs(f0), np.maximum(np.abs(f_mid), np.abs(f1)))
    res = (y1 - y0 - h / 6.0 * (f0 + 4.0 * f_mid + f1)) / (h * scale)
    return np.concatenate([res.ravel(), bc(y[:, 0], y[:, -1], p)])


def initial_guess(params: CGLParams, c: float, omega_hat: float,
                  j: int = 1, n_nodes: int = 400, zeta_right: float = 10.0):
    """Initial mesh and profile from unstable-manifold shooting.

    Integrates the left field from the wave-train equilibrium, locates the
    j-th close approach of z to z_plus, places the trigger there, and
    appends a constant-z exponentially-decaying right tail.
    """
    scaled, y_eq, lam, v_log, _, zp = _equilibrium_data(params, c, omega_hat)
    rhs_min, _ = _log_fields(scaled, params)
    mu = scaled.delta_c_hat**2 / 4.0 - scaled.delta_c_hat + 1j * scaled.omega_hat
    M = math.sqrt(abs(mu))
    zeta_max = j * math.pi / max(M, 1e-6) + 60.0

    eps = 1e-6
    best = None
    for sign in (+1.0, -1.0):
        y0 = y_eq + sign * eps * v_log
        sol = solve_ivp(lambda t, y: rhs_min(y), (0.0, zeta_max), y0,
                        method="DOP853", rtol=1e-10, atol=1e-12,
                        dense_output=True, max_step=0.5)
        dist = np.hypot(sol.y[0] - zp.real, sol.y[1] - zp.imag)
        # close approaches: local minima of |z - z_plus| below a loose cap
        mins = [i for i in range(1, sol.t.size - 1)
                if dist[i] < dist[i - 1] and dist[i] <= dist[i + 1]
                and dist[i] < 1.0]
        if len(mins) >= j and (best is None or dist[mins[j - 1]] < best[0]):
            best = (dist[mins[j - 1]], sol, mins[j - 1])
    if best is None:
        raise NewtonDiverged(f"shooting guess found no j = {j} approach to "
                             f"z_plus at c = {c}")
    _, sol, i_hit = best
    t_hit = sol.t[i_hit]
    zeta_left = -t_hit
    # place nodes by trajectory arclength (blended with uniform) so the
    # fast near-pole excursions of the j > 1 guesses are resolved
    t_fine = np.linspace(0.0, t_hit, 20 * n_nodes)
    y_fine = sol.sol(t_fine)
    seg = np.hypot(np.hypot(np.diff(y_fine[0]), np.diff(y_fine[1])),
                   0.05 * np.diff(y_fine[2]))
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    w = 0.5 * arc / arc[-1] + 0.5 * t_fine / t_hit
    s = np.interp(np.linspace(0.0, 1.0, n_nodes), w, t_fine / t_hit)
    s[0], s[-1] = 0.0, 1.0
    # left segment: zeta = zeta_left*(1-s), so trajectory time t = t_hit*s
    y_left = sol.sol(t_hit * s)
    # right segment: constant z at z_plus, linear log-amplitude decay
    y_end = sol.sol(t_hit)
    zeta_r = zeta_right * s
    y_right = np.vstack([
        np.full_like(s, zp.real),
        np.full_like(s, zp.imag),
        y_end[2] + 2.0 * zp.real * zeta_r,
    ])
    y = np.vstack([y_left, y_right])
    return BVPMesh(zeta_left=zeta_left, zeta_right=zeta_right,
                   n_nodes=n_nodes), s, y


def solve_point(params: CGLParams, c: float, omega_hat_guess: float,
                j: int = 1, n_nodes: int = 400, zeta_right: float = 10.0,
                tol: float = 1e-10, guess=None) -> BVPSolution:
    """Converge one trigger-front profile at fixed c with omega_hat free."""
    if guess is None:
        mesh, s, y = initial_guess(params, c, omega_hat_guess, j=j,
                                   n_nodes=n_nodes, zeta_right=zeta_right)
    else:
        mesh, s, y = guess
    fun, bc = _make_system(params, c, mesh.zeta_left, mesh.zeta_right)
    # ladder of mesh tolerances: profiles passing close to the projective
    # pole (j > 1) defeat the solver's continuous-residual refinement at
    # tight tol even though the discrete certificate below is satisfied
    sol = None
    for tol_k in sorted({tol, 1e-8, 1e-6}):
        sol = solve_bvp(fun, bc, s, y, p=[omega_hat_guess], tol=tol_k,
                        max_nodes=200000, verbose=0)
        if sol.status == 0:
            break
    if sol.status != 0:
        raise NewtonDiverged(f"solve_bvp failed at c = {c}: {sol.message}")
    omega_hat = float(sol.p[0])
    res = assemble_residual(sol.x, sol.y, omega_hat, params, c,
                            mesh.zeta_left, mesh.zeta_right)
    residual_norm = float(np.max(np.abs(res)))
    if residual_norm > 1e-9:
        raise NewtonDiverged(f"certificate residual {residual_norm:.2e} "
                             f"exceeds 1e-9 at c = {c}")
    scaled = scaling.scaled_from_c_omega_hat(params, c, omega_hat)
    return BVPSolution(s=sol.x, y=sol.y, omega_hat=omega_hat, c=c,
                       params=params, scaled=scaled,
                       zeta_left=mesh.zeta_left, zeta_right=mesh.zeta_right,
                       residual_norm=residual_norm)


def condition_number(solution: BVPSolution, max_nodes: int = 41) -> float:
    """Condition number of the square discrete Jacobian on a coarse mesh.

    A large value flags an approaching fold or an ill-posed truncation.
    """
    s_c = np.linspace(0.0, 1.0, max_nodes)
    y_c = interp1d(solution.s, solution.y, kind="cubic")(s_c)
    n = y_c.size + 1

    def resid(u):
        yy = u[:-1].reshape(y_c.shape)
        return assemble_residual(s_c, yy, u[-1], solution.params, solution.c,
                                 solution.zeta_left, solution.zeta_right)

    u0 = np.concatenate([y_c.ravel(), [solution.omega_hat]])
    r0 = resid(u0)
    J = np.empty((r0.size, n))
    for i in range(n):
        du = 1e-7 * max(1.0, abs(u0[i]))
        up = u0.copy()
        up[i] += du
        J[:, i] = (resid(up) - r0) / du
    return float(np.linalg.cond(J))


def branch_point(solution: BVPSolution, delta: float = 1e-3,
                 with_condition: bool = True) -> BranchPoint:
    """Unscale a converged solution into reported branch quantities."""
    params = solution.params
    c, omega_tf = scaling.from_scaled(params, solution.scaled)
    k_tf = dispersion.k_from_omega(params, omega_tf, c)
    cond = condition_number(solution) if with_condition else math.nan
    return BranchPoint(
        c=c, delta_c=dispersion.c_lin(params) - c,
        omega_hat=solution.omega_hat, omega_tf=omega_tf, k_tf=k_tf,
        xi_star=solution.xi_star(delta), residual=solution.residual_norm,
        condition_number=cond, solution=solution)


def continue_in_c(params: CGLParams, c_values, omega_hat_start: float,
                  j: int = 1, delta: float = 1e-3,
                  with_condition: bool = True,
                  max_bisections: int = 3) -> Branch:
    """March the trigger-front branch through the given c values.

    Each converged point seeds the next through a secant predictor for
    omega_hat; failed steps are bisected in c before giving up.
    """
    c_values = list(c_values)
    points = []
    history = []  # (c, omega_hat) of converged points

    def predict(c):
        if len(history) >= 2:
            (c1, w1), (c2, w2) = history[-2], history[-1]
            return w2 + (w2 - w1) * (c - c2) / (c2 - c1)
        if history:
            return history[-1][1]
        return omega_hat_start

    for c_target in c_values:
        pending = [c_target]
        bisections = 0
        while pending:
            c = pending[-1]
            try:
                sol = solve_point(params, c, predict(c), j=j)
            except NewtonDiverged as exc:
                if not history or bisections >= max_bisections:
                    if points:
                        raise StepFailure(
                            f"step to c = {c} failed after {bisections} "
                            f"bisections; last good c = {points[-1].c}"
                        ) from exc
                    raise
                bisections += 1
                pending.append(0.5 * (history[-1][0] + c))
                continue
            history.append((c, sol.omega_hat))
            pending.pop()
            if not pending:  # only record the requested targets
                points.append(branch_point(sol, delta=delta,
                                           with_condition=with_condition))
    return Branch(points=points)
