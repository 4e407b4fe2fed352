"""Shared fixtures: reference parameters and the shooting coefficient."""

import pytest

from cglfronts import blowup, scaling
from cglfronts.dispersion import CGLParams


@pytest.fixture(scope="session")
def params():
    return CGLParams(alpha=-0.1, gamma=-0.2)


@pytest.fixture(scope="session")
def scaled_linear(params):
    return scaling.scaled_at_linear_point(params)


@pytest.fixture(scope="session")
def shot(params, scaled_linear):
    return blowup.shoot_free_front(scaled_linear, params, delta=1e-3)


@pytest.fixture(scope="session")
def dz(params, shot):
    return blowup.delta_Z(params, shot.z_star)
