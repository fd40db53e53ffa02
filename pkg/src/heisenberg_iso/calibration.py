"""Calibration fields on the cylinder C_r minus the t-axis.

Translating the upper (resp. lower) hemisphere of the sphere of curvature
``lam = 1/r`` vertically foliates the cylinder.  The horizontal unit
normals to these leaves, pointing into the ball, are

    upper:  sum (-lam x_i - c y_i) X_i + (-lam y_i + c x_i) Y_i
    lower:  sum (-lam x_i + c y_i) X_i + (-lam y_i - c x_i) Y_i

with ``c = sqrt(1 - lam^2 |z|^2) / |z|``.  Their coefficients do not depend
on t, and each frame field is divergence free for the (unimodular) volume,
so the Riemannian divergence is ``sum d a_{x,i}/dx_i + d a_{y,i}/dy_i``.

The divergence is measured, never assumed: downstream code takes the
calibration constant ``kappa = -div`` from :func:`calibration_constant`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DomainError
from .group import FrameVector, unit_sphere_area
from .quadrature import integrate, integrate_pieces
from .radial import DEFAULT_TOL, RadialSet, half_perimeter, half_volume

FD_STEP = 1e-5
HALVES = ("upper", "lower")


@dataclass(frozen=True)
class CalibrationField:
    n: int
    lam: float
    half: str = "upper"
    # test hook: flips the c-term sign in the boundary integrand only, the way
    # a one-site sign bug would; a global flip is just the other valid field
    inject_sign_error: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self.half not in HALVES:
            raise ValueError(f"half must be 'upper' or 'lower', got {self.half!r}")
        if not self.lam > 0:
            raise DomainError(f"lambda must be positive, got {self.lam!r}")

    @property
    def c_sign(self) -> float:
        return 1.0 if self.half == "upper" else -1.0

    @property
    def radius(self) -> float:
        return 1.0 / self.lam

    def mutated(self) -> CalibrationField:
        return replace(self, inject_sign_error=not self.inject_sign_error)


@dataclass(frozen=True)
class CalConst:
    n: int
    lam: float
    kappa: float
    spread: float
    samples: int

    @property
    def stated(self) -> float:
        """The value n*lam of the calibration constant as it is usually quoted."""
        return self.n * self.lam

    @property
    def derived(self) -> float:
        """2*n*lam, obtained by differentiating the field formula by hand."""
        return 2.0 * self.n * self.lam


def field_coefficients(F: CalibrationField, z) -> np.ndarray:
    """Frame coefficients of the field at horizontal points ``z`` of shape (..., 2n)."""
    z = np.asarray(z, dtype=np.float64)
    x = z[..., 0::2]
    y = z[..., 1::2]
    r2 = np.sum(z * z, axis=-1, keepdims=True)
    r = np.sqrt(r2)
    c = F.c_sign * np.sqrt(np.maximum(0.0, 1.0 - F.lam * F.lam * r2)) / r
    out = np.empty_like(z)
    out[..., 0::2] = -F.lam * x - c * y
    out[..., 1::2] = -F.lam * y + c * x
    return out


def _check_domain(F, z, margin=0.0):
    r = float(np.sqrt(np.dot(z, z)))
    if r <= 0.0:
        raise DomainError("the calibration field is undefined on the t-axis (z = 0)")
    if r + margin > F.radius * (1.0 + 1e-14):
        raise DomainError(f"|z| = {r!r} lies outside the cylinder of radius {F.radius!r}")
    return r


def field_at(F: CalibrationField, z) -> FrameVector:
    z = np.asarray(z, dtype=np.float64)
    if z.size != 2 * F.n:
        raise DomainError(f"expected 2n = {2 * F.n} horizontal coordinates, got {z.size}")
    _check_domain(F, z)
    return FrameVector(field_coefficients(F, z))


def field_divergence_exact(F: CalibrationField, z) -> float:
    """Divergence from hand-differentiated partials (oracle for :func:`measure_divergence`)."""
    z = np.asarray(z, dtype=np.float64)
    r = _check_domain(F, z)
    x = z[0::2]
    y = z[1::2]
    q = np.sqrt(max(0.0, 1.0 - F.lam**2 * r * r))
    # dc/dr for c = q / r
    dc = -F.c_sign / (r * r * q)
    dax = -F.lam - y * dc * x / r
    day = -F.lam + x * dc * y / r
    return float(np.sum(dax + day))


def measure_divergence(F: CalibrationField, z, h: float = FD_STEP) -> float:
    """Central-difference divergence of the frame coefficients at ``z``."""
    z = np.asarray(z, dtype=np.float64)
    if not h > 0:
        raise DomainError(f"finite-difference step must be positive, got {h!r}")
    r = float(np.sqrt(np.dot(z, z)))
    if r <= 2.0 * h:
        raise DomainError(f"stencil of step {h!r} reaches the t-axis at |z| = {r!r}")
    _check_domain(F, z, margin=h)
    d = z.size
    stencil = np.repeat(z[None, :], 2 * d, axis=0)
    idx = np.arange(d)
    stencil[2 * idx, idx] += h
    stencil[2 * idx + 1, idx] -= h
    vals = field_coefficients(F, stencil)
    partials = (vals[2 * idx, idx] - vals[2 * idx + 1, idx]) / (2.0 * h)
    return float(np.sum(partials))


def sample_points(n: int, lam: float, count: int, seed: int = 0, inner=0.1, outer=0.9) -> np.ndarray:
    """Random points of the annulus inner/lam <= |z| <= outer/lam in R^{2n}."""
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, 2 * n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    radii = (inner + (outer - inner) * rng.random(count)) / lam
    return dirs * radii[:, None]


def calibration_constant(n: int, lam: float, samples: int = 100, h: float = FD_STEP, seed: int = 0,
                         half: str = "upper") -> CalConst:
    F = CalibrationField(n, lam, half)
    divs = np.array([measure_divergence(F, z, h) for z in sample_points(n, lam, samples, seed)])
    return CalConst(n, float(lam), float(-divs.mean()), float(divs.max() - divs.min()), samples)


@lru_cache(maxsize=None)
def _measured_slope(n: int) -> float:
    return calibration_constant(n, 1.0).kappa


def kappa_function(n: int, convention: str = "measured"):
    """kappa(rho) as a linear function of the curvature.

    ``"measured"`` uses the divergence measured at lam = 1 (homogeneity makes
    it linear in lam); ``"stated"`` uses n * rho.
    """
    if convention == "measured":
        slope = _measured_slope(int(n))
    elif convention == "stated":
        slope = float(n)
    else:
        raise ValueError(f"unknown kappa convention {convention!r}")

    def kappa(rho: float) -> float:
        return slope * rho

    kappa.slope = slope
    return kappa


def disk_flux(F: CalibrationField, tol: float = DEFAULT_TOL) -> float:
    """Flux of the field through D with the Riemannian normal pointing into {t > 0}.

    At z = (r, 0, ..., 0) the unit normal is (Y-coefficient -r, T-coefficient 1)
    over sqrt(1 + r^2) and dD = sqrt(1 + r^2) dz, so the integrand reduces to the
    field's Y_1-coefficient times -r; the theta substitution r = sin(theta)/lam
    removes the square-root endpoint behaviour.
    """
    integral = integrate(kernels.DISK_FLUX, 0.0, 0.5 * np.pi, [F.lam, F.n], tol, what="disk flux")
    return -F.c_sign * unit_sphere_area(F.n) * integral


@dataclass(frozen=True)
class FluxBalance:
    half: str
    kappa: float
    volume: float
    boundary_flux: float
    boundary_area: float
    disk_term: float

    @property
    def residual(self) -> float:
        """-kappa |E^+-| + boundary flux + disk term; zero for every admissible set."""
        return -self.kappa * self.volume + self.boundary_flux + self.disk_term

    @property
    def saturated_residual(self) -> float:
        """Same balance with <field, nu_H> replaced by 1; zero only on the sphere."""
        return -self.kappa * self.volume + self.boundary_area + self.disk_term

    @property
    def saturation_gap(self) -> float:
        """Integral of (1 - <field, nu_H>) over the boundary half."""
        return self.boundary_area - self.boundary_flux


def boundary_flux(F: CalibrationField, E: RadialSet, tol: float = DEFAULT_TOL) -> float:
    """Integral of <field, nu_H> d|dE| over the graph of u^+- and the wall below/above it."""
    prof = E.profile(F.half)
    orient = 1.0 if F.half == "upper" else -1.0
    c_sign = -F.c_sign if F.inject_sign_error else F.c_sign
    extra = [2.0 * E.n - 1.0, F.lam, c_sign, orient]
    graph = integrate_pieces(kernels.GRAPH_FLUX, prof.breaks, prof.coefs, extra, tol, what="boundary flux")
    # wall at z = (r, 0, ..): inner unit normal -X_1, field X_1-coefficient -lam r
    r = E.r_cyl
    wall = r ** (2 * E.n - 1) * prof.end_value * (F.lam * r)
    return unit_sphere_area(E.n) * (graph + wall)


def flux_balance(F: CalibrationField, E: RadialSet, tol: float = DEFAULT_TOL, kappa: float | None = None) -> FluxBalance:
    if not np.isclose(F.lam * E.r_cyl, 1.0, rtol=1e-12, atol=0.0):
        raise DomainError(f"field curvature {F.lam!r} must equal 1/r_cyl = {1.0 / E.r_cyl!r}")
    if kappa is None:
        kappa = calibration_constant(F.n, F.lam, half=F.half).kappa
    disk = disk_flux(F, tol)
    if F.half == "lower":
        disk = -disk  # the inner normal of E^- along D points into {t < 0}
    return FluxBalance(
        half=F.half,
        kappa=float(kappa),
        volume=half_volume(E, F.half, tol),
        boundary_flux=boundary_flux(F, E, tol),
        boundary_area=half_perimeter(E, F.half, tol),
        disk_term=disk,
    )


def flux_identity_residual(F: CalibrationField, E: RadialSet, tol: float = DEFAULT_TOL,
                           kappa: float | None = None) -> float:
    return abs(flux_balance(F, E, tol, kappa).residual)
