"""Linear and nonlinear dispersion relations of the triggered CGL equation.

The linearization at A = 0 in a frame moving with speed c has dispersion
relation d(lambda, nu) = (1 + i*alpha)*nu**2 + chi - lambda (comoving form
obtained by lambda -> lambda - c*nu).  Everything in this module follows
from that quadratic and from the wave-train family

    A(t, x) = sqrt(1 - k**2) * exp(i*Omega_nl(k)*t - i*k*x),
    Omega_nl(k) = -alpha*k**2 - gamma*(1 - k**2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import (
    AmbiguousRoot,
    InvalidWavenumber,
    NoAdmissibleRoot,
    NoCrossing,
    NonConvergence,
)

_BRANCH_SWITCH = 1e-8  # |gamma - alpha| below this: use the gamma == alpha branch


@dataclass(frozen=True)
class CGLParams:
    """Physical parameters of the triggered CGL equation."""

    alpha: float
    gamma: float
    chi_minus: float = 1.0
    chi_plus: float = -1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.gamma)):
            raise ValueError("alpha and gamma must be finite")
        if not self.chi_minus > 0.0 > self.chi_plus:
            raise ValueError("need chi_minus > 0 > chi_plus")


@dataclass(frozen=True)
class LinearSpreading:
    """Marginal spreading speed and leading-edge frequency/decay rate."""

    c_lin: float
    omega_lin: float
    nu_lin: complex


@dataclass(frozen=True)
class AbsSpectrumCurve:
    """Sampled absolute spectrum: half-line from the double-root edge."""

    points: np.ndarray
    edge: complex
    omega_abs: float | None


def c_lin(params: CGLParams) -> float:
    return 2.0 * math.sqrt(1.0 + params.alpha**2)


def linear_spreading(params: CGLParams) -> LinearSpreading:
    """Closed-form spreading speed, frequency and double spatial root."""
    a = params.alpha
    s = math.sqrt(1.0 + a * a)
    return LinearSpreading(c_lin=2.0 * s, omega_lin=a, nu_lin=-(1.0 - 1j * a) / s)


def _dispersion(params: CGLParams, lam: complex, nu: complex, chi: float) -> complex:
    return (1.0 + 1j * params.alpha) * nu**2 + chi - lam


def _saddle_residual(x: np.ndarray, params: CGLParams, chi: float) -> np.ndarray:
    c, omega, re_nu, im_nu = x
    nu = re_nu + 1j * im_nu
    # d(i*omega - c*nu, nu) and its total nu-derivative
    d = _dispersion(params, 1j * omega - c * nu, nu, chi)
    dd = 2.0 * (1.0 + 1j * params.alpha) * nu + c
    return np.array([d.real, d.imag, dd.real, dd.imag])


def double_root_solve(params: CGLParams, chi: float = 1.0):
    """Solve the saddle-point system d = 0, d_nu d = 0 by Newton from a scan.

    Returns (c, lambda, nu) for the root with Re nu < 0 and c > 0; lambda is
    the comoving-frame eigenvalue i*omega (marginal, Re lambda = 0).
    """
    if chi <= 0.0:
        raise ValueError("chi must be positive for a real spreading speed")
    scan = np.linspace(-3.0, 3.0, 13)
    for re0 in scan:
        if re0 >= 0.0:
            continue
        for im0 in scan:
            nu0 = re0 + 1j * im0
            # c from Re of the derivative condition, omega from Im of d
            c0 = (-2.0 * (1.0 + 1j * params.alpha) * nu0).real
            if c0 <= 0.0:
                continue
            om0 = ((1.0 + 1j * params.alpha) * nu0**2 + chi + c0 * nu0).imag
            sol = optimize.root(
                _saddle_residual, [c0, om0, nu0.real, nu0.imag],
                args=(params, chi), method="hybr", tol=1e-14,
            )
            if not sol.success:
                continue
            res = np.max(np.abs(_saddle_residual(sol.x, params, chi)))
            c, omega, re_nu, im_nu = sol.x
            if c <= 0.0 or re_nu >= 0.0 or res > 1e-10:
                continue
            # pinching: roots must split by real part far to the right
            far = spatial_roots(params, 1j * omega + 100.0, c, chi)
            if not far[0].real < 0.0 < far[1].real:
                continue
            return c, 1j * omega, re_nu + 1j * im_nu
    raise NonConvergence("saddle-point Newton failed from every scan point")


def spatial_roots(params: CGLParams, lam: complex, c: float, chi: float = 1.0):
    """The two roots of (1+i*alpha)*nu**2 + c*nu + chi - lambda = 0.

    Ordered by real part; ties broken by imaginary part ascending.
    """
    a = 1.0 + 1j * params.alpha
    disc = np.sqrt(c**2 - 4.0 * a * (chi - lam) + 0j)
    r1 = (-c + disc) / (2.0 * a)
    r2 = (-c - disc) / (2.0 * a)
    key = lambda nu: (nu.real, nu.imag)
    lo, hi = sorted((r1, r2), key=key)
    return lo, hi


def omega_abs(params: CGLParams, c: float) -> float:
    """Imaginary-axis crossing frequency of the absolute spectrum."""
    a = params.alpha
    if not 0.0 <= c < c_lin(params):
        raise NoCrossing(f"no crossing: c = {c} >= c_lin = {c_lin(params)}")
    return -a + a * c**2 / (2.0 * (1.0 + a * a))


def absolute_spectrum(params: CGLParams, c: float, s_max: float = 4.0,
                      n: int = 200) -> AbsSpectrumCurve:
    """Sample the absolute spectrum half-line lambda(s) = edge - (1+i*alpha)*s."""
    if n < 2 or s_max <= 0.0:
        raise ValueError("need n >= 2 and s_max > 0")
    a = 1.0 + 1j * params.alpha
    edge = 1.0 - c**2 / (4.0 * a)
    s = np.linspace(0.0, s_max, n)
    pts = edge - a * s
    try:
        om = omega_abs(params, c)
    except NoCrossing:
        om = None
    return AbsSpectrumCurve(points=pts, edge=complex(edge), omega_abs=om)


def nonlinear_dispersion(params: CGLParams, k: float, c: float) -> float:
    """Comoving-frame frequency Omega(k; c) of the wave train with wavenumber k."""
    if abs(k) >= 1.0:
        raise InvalidWavenumber(f"|k| = {abs(k)} >= 1: no wave train")
    return -params.alpha * k**2 - params.gamma * (1.0 - k**2) - c * k


def group_velocity(params: CGLParams, k: float, c: float) -> float:
    """d Omega / dk in the comoving frame."""
    if abs(k) >= 1.0:
        raise InvalidWavenumber(f"|k| = {abs(k)} >= 1: no wave train")
    return 2.0 * (params.gamma - params.alpha) * k - c


def k_lin(params: CGLParams) -> float:
    """Linearly selected wavenumber in the wake of the free front."""
    a, g = params.alpha, params.gamma
    if abs(g - a) < _BRANCH_SWITCH:
        return -a / math.sqrt(1.0 + a * a)
    return -(math.sqrt(1.0 + g * g) - math.sqrt(1.0 + a * a)) / (g - a)


def k_from_omega(params: CGLParams, omega: float, c: float) -> float:
    """Invert Omega(k; c) = omega for the emitted-wave-train wavenumber.

    Selects the unique root with |k| < 1 and negative group velocity.
    """
    a, g = params.alpha, params.gamma
    if abs(g - a) < _BRANCH_SWITCH:
        roots = [-(g + omega) / c]
    else:
        disc = c**2 + 4.0 * (g - a) * (g + omega)
        if disc < 0.0:
            raise NoAdmissibleRoot("complex roots: no wave train at this frequency")
        roots = [(c + math.sqrt(disc)) / (2.0 * (g - a)),
                 (c - math.sqrt(disc)) / (2.0 * (g - a))]
    adm = [k for k in roots if abs(k) < 1.0 and group_velocity(params, k, c) < 0.0]
    if not adm:
        raise NoAdmissibleRoot(f"no admissible root for omega = {omega}, c = {c}")
    if len(adm) > 1 and abs(adm[0] - adm[1]) > 1e-14:
        raise AmbiguousRoot(f"two admissible roots: {adm}")
    return adm[0]
