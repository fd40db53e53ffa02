"""Sub-Riemannian isoperimetry in the Heisenberg group H^n.

Group arithmetic, closed-form geodesics, the rotationally symmetric
spheres S_lam, calibration fields on cylinders and the deficit pipeline
for two-graph candidate sets.
"""

from ._accel import BACKEND
from .calibration import CalibrationField, calibration_constant, flux_balance, kappa_function
from .errors import (
    DimensionError,
    DomainError,
    HeisenbergError,
    InvariantError,
    QuadratureError,
    ValidationError,
)
from .families import bump_set, cone_set, random_family, slab_set, sphere_set
from .geodesics import GeodesicSpec, closed_form, geodesic_state, geodesic_trace
from .group import Dimension, FrameVector, Point, dilate, group_inv, group_mul
from .isoperimetry import DeficitReport, check_estimate, deficit, f_rho, find_mu
from .pansu import PansuSphere, ball_volume, char_curve_residual, sphere_area
from .radial import RadialSet, from_values, set_perimeter, set_volume, validate

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CalibrationField",
    "DeficitReport",
    "Dimension",
    "DimensionError",
    "DomainError",
    "FrameVector",
    "GeodesicSpec",
    "HeisenbergError",
    "InvariantError",
    "PansuSphere",
    "Point",
    "QuadratureError",
    "RadialSet",
    "ValidationError",
    "ball_volume",
    "bump_set",
    "calibration_constant",
    "char_curve_residual",
    "check_estimate",
    "closed_form",
    "cone_set",
    "deficit",
    "dilate",
    "f_rho",
    "find_mu",
    "flux_balance",
    "from_values",
    "geodesic_state",
    "geodesic_trace",
    "group_inv",
    "group_mul",
    "kappa_function",
    "random_family",
    "set_perimeter",
    "set_volume",
    "slab_set",
    "sphere_area",
    "sphere_set",
    "validate",
]
