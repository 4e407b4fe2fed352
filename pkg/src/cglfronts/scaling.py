"""Parameter and coordinate scalings that normalize the spreading speed to 2.

The transformation (for 1 + alpha*gamma > 0)

    S      = c*alpha / (2*(1+alpha^2))
    m^2    = 1 + (c*alpha)^2 / (4*(1+alpha^2)) - alpha*omega
    l^2    = (1 + alpha*gamma) / m^2
    a(zeta) = l * exp(-i*S*xi) * A(xi),   zeta = m*xi / sqrt(1+alpha^2)

maps the traveling-wave ODE to

    a'' = -(1 - i*omega_hat)*a - c_hat*a' + (1 + i*gamma_hat)*a*|a|^2
          + (1 - chi)/m^2 * (1 - i*alpha)*a,

with c_hat = c/(m*sqrt(1+alpha^2)), omega_hat = (omega - omega_abs(c))/m^2
and gamma_hat = (gamma - alpha)/(1 + gamma*alpha).  At the free-front point
(c, omega) = (c_lin, omega_lin) one gets c_hat = 2, m = 1, omega_hat = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import dispersion
from .dispersion import CGLParams
from .errors import BenjaminFeirRegime, NonPositiveM


@dataclass(frozen=True)
class ScaledParams:
    """Normalized parameter set of the scaled traveling-wave system."""

    c_hat: float
    delta_c_hat: float
    omega_hat: float
    gamma_hat: float
    m: float
    l: float
    shift_rate: float   # gauge rotation rate S
    zeta_scale: float   # d zeta / d xi = m / sqrt(1+alpha^2)


def to_scaled(params: CGLParams, c: float, omega: float) -> ScaledParams:
    """Scale physical (c, omega) to the normalized parameter set."""
    a, g = params.alpha, params.gamma
    if 1.0 + a * g <= 0.0:
        raise BenjaminFeirRegime("1 + alpha*gamma <= 0: use the unscaled simulator")
    one_a2 = 1.0 + a * a
    m2 = 1.0 + (c * a) ** 2 / (4.0 * one_a2) - a * omega
    if m2 <= 0.0:
        raise NonPositiveM(f"m^2 = {m2} <= 0")
    m = math.sqrt(m2)
    om_abs = -a + a * c**2 / (2.0 * one_a2)
    c_hat = c / (m * math.sqrt(one_a2))
    return ScaledParams(
        c_hat=c_hat,
        delta_c_hat=2.0 - c_hat,
        omega_hat=(omega - om_abs) / m2,
        gamma_hat=(g - a) / (1.0 + g * a),
        m=m,
        l=math.sqrt((1.0 + a * g) / m2),
        shift_rate=c * a / (2.0 * one_a2),
        zeta_scale=m / math.sqrt(one_a2),
    )


def from_scaled(params: CGLParams, scaled: ScaledParams):
    """Recover the physical (c, omega) that produced a ScaledParams."""
    a = params.alpha
    one_a2 = 1.0 + a * a
    c = scaled.c_hat * scaled.m * math.sqrt(one_a2)
    om_abs = -a + a * c**2 / (2.0 * one_a2)
    omega = om_abs + scaled.m**2 * scaled.omega_hat
    return c, omega


def scaled_at_linear_point(params: CGLParams) -> ScaledParams:
    """Scaling evaluated at (c, omega) = (c_lin, omega_lin); m = 1, c_hat = 2."""
    lin = dispersion.linear_spreading(params)
    return to_scaled(params, lin.c_lin, lin.omega_lin)


def scaled_from_c_omega_hat(params: CGLParams, c: float,
                            omega_hat: float) -> ScaledParams:
    """Scaling at physical speed c with the scaled frequency prescribed.

    Solves the implicit relation m^2 = m0^2 / (1 + alpha*omega_hat) coming
    from omega = omega_abs(c) + m^2*omega_hat.
    """
    a = params.alpha
    one_a2 = 1.0 + a * a
    om_abs = -a + a * c**2 / (2.0 * one_a2)
    m0_sq = 1.0 + (c * a) ** 2 / (4.0 * one_a2) - a * om_abs
    denom = 1.0 + a * omega_hat
    if denom <= 0.0 or m0_sq / denom <= 0.0:
        raise NonPositiveM(f"m^2 = {m0_sq / denom} <= 0")
    omega = om_abs + (m0_sq / denom) * omega_hat
    return to_scaled(params, c, omega)


def wavenumber_to_scaled(params: CGLParams, scaled: ScaledParams, k: float) -> float:
    """Map a physical wave-train wavenumber to the scaled one.

    The scaled wave train sits at the sphere equilibrium z = i*k_tilde, so
    k_tilde is defined through a'(zeta)/a(zeta) = i*k_tilde, which gives
    k_tilde = -(k + S)*sqrt(1+alpha^2)/m for A ~ exp(-i*k*xi).
    """
    one_a2 = 1.0 + params.alpha**2
    return -(k + scaled.shift_rate) * math.sqrt(one_a2) / scaled.m


def wavenumber_from_scaled(params: CGLParams, scaled: ScaledParams,
                           k_tilde: float) -> float:
    """Inverse of wavenumber_to_scaled."""
    one_a2 = 1.0 + params.alpha**2
    return -k_tilde * scaled.m / math.sqrt(one_a2) - scaled.shift_rate
