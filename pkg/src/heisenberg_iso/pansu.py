"""The spheres S_lam: union of the graphs of +f and -f over |z| <= 1/lam.

    f(r) = (lam r sqrt(1 - lam^2 r^2) + arccos(lam r)) / (2 lam^2)

Area and volume use the reduced radial integrands (``r / sqrt(1 - lam^2 r^2)``
for the perimeter density of each graph) with the substitution
``r = sin(theta)/lam``, which removes the endpoint singularity at the equator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError
from .geodesics import GeodesicSpec, closed_form, identity_coefficient
from .group import FrameVector, Point, j_rotate, unit_sphere_area
from .quadrature import integrate

DEFAULT_TOL = 1e-10
_EDGE = 1e-12
# (offset k in units of -h, weight), divisor; point rho - k h
_STENCILS = {
    3: (((-1, 1.0), (1, -1.0)), 2.0),
    5: (((-2, -1.0), (-1, 8.0), (1, -8.0), (2, 1.0)), 12.0),
}


@dataclass(frozen=True)
class PansuSphere:
    n: int
    lam: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"dimension n must be a positive integer, got {self.n!r}")
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be positive, got {self.lam!r}")
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def equator_radius(self) -> float:
        return 1.0 / self.lam

    @property
    def pole_height(self) -> float:
        return np.pi / (4.0 * self.lam**2)

    @property
    def south_pole(self) -> Point:
        return Point(np.zeros(2 * self.n), -self.pole_height)

    @property
    def north_pole(self) -> Point:
        return Point(np.zeros(2 * self.n), self.pole_height)


@dataclass(frozen=True)
class SphereGeometry:
    area: float
    volume: float
    pole_height: float


def _radius_arg(S, r, closed):
    r = np.asarray(r, dtype=np.float64)
    R = S.equator_radius
    upper_ok = r <= R * (1.0 + _EDGE) if closed else r < R
    if np.any(r < 0) or not np.all(upper_ok):
        bound = "]" if closed else ")"
        raise DomainError(f"radius must lie in [0, 1/lam{bound} = [0, {R!r}{bound}")
    return np.minimum(r, R)


def profile_height(S: PansuSphere, r):
    """f(r); scalar in, scalar out."""
    r = _radius_arg(S, r, closed=True)
    lr = S.lam * r
    out = (lr * np.sqrt(1.0 - lr * lr) + np.arccos(lr)) / (2.0 * S.lam**2)
    return float(out) if out.ndim == 0 else out


def profile_slope(S: PansuSphere, r):
    """f'(r) = -lam r^2 / sqrt(1 - lam^2 r^2); undefined (infinite) at the equator."""
    r = _radius_arg(S, r, closed=False)
    lr = S.lam * r
    out = -S.lam * r * r / np.sqrt(1.0 - lr * lr)
    return float(out) if out.ndim == 0 else out


def sphere_area(S: PansuSphere, tol: float = DEFAULT_TOL) -> float:
    """Sub-Riemannian perimeter of B_lam (both hemispheres)."""
    radial = integrate(kernels.SPHERE_AREA, 0.0, 0.5 * np.pi, [S.lam, S.n], tol, what="sphere area")
    return 2.0 * unit_sphere_area(S.n) * radial


def ball_volume(S: PansuSphere, tol: float = DEFAULT_TOL) -> float:
    radial = integrate(kernels.BALL_VOLUME, 0.0, 0.5 * np.pi, [S.lam, S.n], tol, what="ball volume")
    return 2.0 * unit_sphere_area(S.n) * radial


def sphere_geometry(S: PansuSphere, tol: float = DEFAULT_TOL) -> SphereGeometry:
    return SphereGeometry(sphere_area(S, tol), ball_volume(S, tol), S.pole_height)


def sphere_normal(S: PansuSphere, p: Point, hemisphere: str, tol: float = 1e-9) -> FrameVector:
    """Inner horizontal unit normal at a point of the closed upper or lower hemisphere.

    Computed from the graph normal ``sum (+-f_x - y) X + (+-f_y + x) Y``,
    multiplied through by sqrt(1 - lam^2 |z|^2) so it stays finite on the
    equator, then normalized.
    """
    if hemisphere not in ("upper", "lower"):
        raise ValueError(f"hemisphere must be 'upper' or 'lower', got {hemisphere!r}")
    if p.n != S.n:
        raise DomainError(f"point lives in H^{p.n}, sphere in H^{S.n}")
    r = p.radius
    if r == 0.0:
        raise DomainError("the horizontal normal is undefined at the poles")
    sign = 1.0 if hemisphere == "upper" else -1.0
    height = sign * profile_height(S, r)
    # f ~ sqrt(1/lam - r) at the equator, so a few ulps in r move it visibly
    wobble = 4.0 * np.finfo(float).eps * r
    nearby = profile_height(S, np.array([max(0.0, r - wobble), min(S.equator_radius, r + wobble)]))
    slack = float(np.max(np.abs(nearby - abs(height))))
    if abs(p.t - height) > tol * max(1.0, S.pole_height) + slack:
        raise DomainError(f"point is not on the {hemisphere} hemisphere (t = {p.t!r}, graph height {height!r})")
    lr = min(1.0, S.lam * r)
    q = np.sqrt(1.0 - lr * lr)
    x, y = p.x, p.y
    # q * grad(f)_i = -lam r z_i; the inner normal of the upper graph is
    # (f_x - y, f_y + x) and of the lower graph (f_x + y, f_y - x) up to scale
    a = np.empty(2 * S.n)
    a[0::2] = -S.lam * r * x - sign * q * y
    a[1::2] = -S.lam * r * y + sign * q * x
    return FrameVector(a / np.sqrt(np.dot(a, a)))


@dataclass(frozen=True)
class CharCurveReport:
    containment: float
    velocity: float
    identity: float

    @property
    def residual(self) -> float:
        return max(self.containment, self.velocity, self.identity)


def char_curve_report(S: PansuSphere, v0: FrameVector, samples: int = 100) -> CharCurveReport:
    """Check that the curvature-lam geodesic from the south pole stays on S_lam as a characteristic curve.

    Sample i of ``samples`` sits at s = i pi / (lam (samples + 1)); points with
    s < pi/(2 lam) are checked against the lower graph and the rest against
    the upper one, so a wrong hemisphere shows up as a containment residual.
    """
    if samples < 2:
        raise DomainError(f"samples must be >= 2, got {samples}")
    g = GeodesicSpec(S.lam, S.south_pole, v0)
    s = np.arange(1, samples + 1) * np.pi / (S.lam * (samples + 1))
    z, t, zdot = closed_form(g.lam, g.p0.z, g.p0.t, g.v0.a, s)
    r = np.sqrt(np.sum(z * z, axis=1))
    lower = s < 0.5 * np.pi / S.lam
    sign = np.where(lower, -1.0, 1.0)
    f = profile_height(S, np.minimum(r, S.equator_radius))
    containment = np.max(np.abs(t - sign * f))
    q_over_r = np.sqrt(np.maximum(0.0, 1.0 - (S.lam * r) ** 2)) / r
    k = identity_coefficient(S.lam, s)
    identity = float(np.max(np.abs(k - np.where(lower, 1.0, -1.0) * q_over_r)))
    velocity = 0.0
    for i in range(samples):
        # evaluate the normal on the exact graph point above z to keep the
        # velocity check independent of the containment check
        on_sphere = Point(z[i], sign[i] * f[i])
        nu = sphere_normal(S, on_sphere, "lower" if lower[i] else "upper")
        jnu = j_rotate(nu)
        velocity = max(velocity, float(np.max(np.abs(jnu.a - zdot[i]))))
    return CharCurveReport(float(containment), velocity, identity)


def char_curve_residual(S: PansuSphere, v0: FrameVector, samples: int = 100) -> float:
    return char_curve_report(S, v0, samples).residual


def stationarity_residual(n: int, rho: float, h: float, tol: float = 1e-12, kappa: float | None = None,
                          points: int = 5) -> float:
    """|A'(rho) - kappa(rho) V'(rho)| from central differences of step h.

    ``points=5`` (default) is fourth order.  ``points=3`` is the plain
    second-order difference; its h^2 truncation term is already ~7e-4 at
    h = 1e-4 for n = 2, rho = 0.5, where the area grows like rho^-5.
    """
    from .calibration import calibration_constant

    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    if not 0 < h < rho / 10:
        raise DomainError(f"step h must lie in (0, rho/10), got {h!r}")
    if points not in _STENCILS:
        raise DomainError(f"points must be 3 or 5, got {points!r}")
    weights, denom = _STENCILS[points]
    da = dv = 0.0
    for k, w in weights:
        S = PansuSphere(n, rho - k * h)
        da += w * sphere_area(S, tol)
        dv += w * ball_volume(S, tol)
    da /= denom * h
    dv /= denom * h
    if kappa is None:
        kappa = calibration_constant(n, rho).kappa
    return abs(da - kappa * dv)
