"""Pattern selection by moving triggers in the complex Ginzburg-Landau equation.

Closed-form dispersion predictions, blowup-coordinate shooting for the
correction coefficient, a split-step spectral simulator, and boundary-value
continuation of trigger-front heteroclinics.
"""

from .dispersion import CGLParams, LinearSpreading, linear_spreading
from .scaling import (ScaledParams, to_scaled, from_scaled,
                      scaled_at_linear_point)
from .blowup import DeltaZ, ShootResult, delta_Z, shoot_free_front
from .predict import Prediction, make_prediction
from .simulate import (Grid, FieldState, WakeMeasurement, triggered_run,
                       free_front_run)
from .continuation import Branch, BVPSolution, continue_in_c, solve_point
from .errors import CGLError

__all__ = [
    "CGLParams", "LinearSpreading", "linear_spreading",
    "ScaledParams", "to_scaled", "from_scaled", "scaled_at_linear_point",
    "DeltaZ", "ShootResult", "delta_Z", "shoot_free_front",
    "Prediction", "make_prediction",
    "Grid", "FieldState", "WakeMeasurement", "triggered_run",
    "free_front_run",
    "Branch", "BVPSolution", "continue_in_c", "solve_point",
    "CGLError",
]

__version__ = "0.1.0"
