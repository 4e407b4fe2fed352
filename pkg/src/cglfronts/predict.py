"""Closed-form predictions for trigger fronts just below the spreading speed.

For 0 < delta_c = c_lin - c << 1 the j-indexed family of trigger fronts has

    omega_tf = omega_abs(c) + 2|DZ_i| / (pi*j*(1+alpha^2)^(3/4)) * delta_c^(3/2)
    k_tf     = k_lin - g1(alpha, gamma)*delta_c - O(delta_c^(3/2))
    xi_star  = pi*j*(1+alpha^2)^(3/4)*delta_c^(-1/2) + sqrt(1+alpha^2)*DZ_r

where DZ = DZ_r + i*DZ_i is the projective correction coefficient computed by
blowup.delta_Z.  The wavenumber is also returned exactly, by inverting the
nonlinear dispersion relation at omega_tf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import dispersion
from .blowup import DeltaZ
from .dispersion import CGLParams
from .errors import ExpansionUnavailable, SpeedTooLarge

_BRANCH_SWITCH = 1e-8


@dataclass(frozen=True)
class Prediction:
    """All Theorem-level quantities evaluated at one trigger speed."""

    c: float
    delta_c: float
    j: int
    omega_tf: float
    k_tf_expansion: float  # truncated series; NaN when alpha == gamma
    k_tf_exact: float      # from inverting the nonlinear dispersion relation
    xi_star: float
    delta_z: DeltaZ


def _check_speed(params: CGLParams, c: float) -> float:
    dc = dispersion.c_lin(params) - c
    if dc <= 0.0:
        raise SpeedTooLarge(f"c = {c} >= c_lin = {dispersion.c_lin(params)}")
    return dc


def predict_frequency(params: CGLParams, c: float, j: int, dz: DeltaZ) -> float:
    """Trigger-front frequency of the j-th family member."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    dc = _check_speed(params, c)
    a2 = 1.0 + params.alpha**2
    corr = 2.0 * abs(dz.im) / (math.pi * j * a2**0.75) * dc**1.5
    return dispersion.omega_abs(params, c) + corr


def g1(params: CGLParams) -> float:
    """Linear-in-delta_c coefficient of the selected-wavenumber expansion.

    Equal to dk/dc along the branch at the linear point, obtained by
    implicit differentiation of Omega(k; c) = omega_abs(c):

        g1 = (1/(2(gamma-alpha))) * (1 - (1+2*alpha*gamma-alpha^2)
                                         / sqrt((1+alpha^2)(1+gamma^2))),

    which makes k_tf_expansion - k_tf_exact = O(delta_c^(3/2)).
    """
    a, g = params.alpha, params.gamma
    if abs(g - a) < _BRANCH_SWITCH:
        raise ExpansionUnavailable("wavenumber expansion needs alpha != gamma")
    num = 1.0 + 2.0 * a * g - a * a
    return (1.0 - num / math.sqrt((1.0 + a * a) * (1.0 + g * g))) / (2.0 * (g - a))


def predict_wavenumber(params: CGLParams, c: float, dz: DeltaZ, j: int = 1):
    """Selected wake wavenumber: (truncated expansion, exact inversion).

    The expansion term raises ExpansionUnavailable at alpha == gamma; the
    exact value comes from solving Omega(k; c) = omega_tf, which works on
    both branches.
    """
    dc = _check_speed(params, c)
    omega = predict_frequency(params, c, j, dz)
    exact = dispersion.k_from_omega(params, omega, c)
    a, g = params.alpha, params.gamma
    a2 = 1.0 + a * a
    # delta_c^(3/2) coefficient: the frequency correction divided by the
    # group velocity -2*sqrt(1+gamma^2) at the linear point
    expansion = (dispersion.k_lin(params) - g1(params) * dc
                 - abs(dz.im)
                 / (math.pi * j * math.sqrt(1.0 + g * g) * a2**0.75) * dc**1.5)
    return expansion, exact


def predict_interface(params: CGLParams, c: float, dz: DeltaZ, j: int = 1) -> float:
    """Distance between the trigger and the front interface."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    dc = _check_speed(params, c)
    a2 = 1.0 + params.alpha**2
    return math.pi * j * a2**0.75 / math.sqrt(dc) + math.sqrt(a2) * dz.re


def make_prediction(params: CGLParams, c: float, dz: DeltaZ,
                    j: int = 1) -> Prediction:
    """Bundle all predictions at one speed; expansion branch optional."""
    dc = _check_speed(params, c)
    omega = predict_frequency(params, c, j, dz)
    try:
        expansion, exact = predict_wavenumber(params, c, dz, j)
    except ExpansionUnavailable:
        expansion = math.nan
        exact = dispersion.k_from_omega(params, omega, c)
    return Prediction(c=c, delta_c=dc, j=j, omega_tf=omega,
                      k_tf_expansion=expansion, k_tf_exact=exact,
                      xi_star=predict_interface(params, c, dz, j), delta_z=dz)
