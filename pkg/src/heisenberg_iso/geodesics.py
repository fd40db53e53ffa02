"""Sub-Riemannian geodesics of constant curvature in H^n.

A geodesic of curvature ``lam`` solves ``x_i'' = 2 lam y_i'``,
``y_i'' = -2 lam x_i'`` with the horizontality constraint
``t' = sum(x_i' y_i - x_i y_i')``.  :func:`geodesic_state` evaluates the
closed-form solution; :func:`geodesic_ode_oracle` integrates the ODE with
fixed-step RK4 and is kept independent of the closed form on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionError, DomainError
from .group import FrameVector, Point

UNIT_TOL = 1e-12
# below this |2 lam s| the term s - sin(2 lam s)/(2 lam) is summed as a series
_SERIES_ARG = 1e-2


@dataclass(frozen=True)
class GeodesicSpec:
    lam: float
    p0: Point
    v0: FrameVector

    def __post_init__(self):
        if self.p0.n != self.v0.n:
            raise DimensionError(f"p0 lives in H^{self.p0.n}, v0 in H^{self.v0.n}")
        if self.v0.c != 0.0:
            raise DomainError("initial velocity must be horizontal (T-coefficient 0)")
        if abs(self.v0.norm() - 1.0) > UNIT_TOL:
            raise DomainError(f"initial velocity must be unit, |v0| = {self.v0.norm():.17g}")
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def n(self) -> int:
        return self.p0.n


@dataclass(frozen=True)
class GeodesicState:
    s: float
    point: Point
    velocity: FrameVector


def unit_horizontal(a) -> FrameVector:
    """Normalize a horizontal coefficient vector to a unit FrameVector."""
    a = np.asarray(a, dtype=np.float64)
    norm = np.sqrt(np.dot(a, a))
    if norm == 0.0:
        raise DomainError("cannot normalize the zero vector")
    return FrameVector(a / norm)


def _trig_terms(lam, s):
    """Return (sin(2 lam s)/(2 lam), (1 - cos(2 lam s))/(2 lam), (s - sin(2 lam s)/(2 lam))/(2 lam))."""
    s = np.asarray(s, dtype=np.float64)
    if lam == 0.0:
        return s.copy(), np.zeros_like(s), np.zeros_like(s)
    arg = 2.0 * lam * s
    sin_term = np.sin(arg) / (2.0 * lam)
    # 1 - cos(2u) = 2 sin(u)^2 avoids cancellation for small lam s
    cos_term = np.sin(lam * s) ** 2 / lam
    x2 = arg * arg
    # (arg - sin(arg)) / (2 lam)^2, as a series where it would cancel
    series = arg * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))))
    direct = arg - np.sin(arg)
    vert = np.where(np.abs(arg) < _SERIES_ARG, series, direct) / (4.0 * lam * lam)
    return sin_term, cos_term, vert


def closed_form(lam, z0, t0, v, s):
    """Vectorized closed form.  ``s`` may be an array; returns (z, t, zdot) stacked along s."""
    z0 = np.asarray(z0, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    s = np.atleast_1d(np.asarray(s, dtype=np.float64))
    A = v[0::2]
    B = v[1::2]
    x0 = z0[0::2]
    y0 = z0[1::2]
    S, K, V = _trig_terms(lam, s)
    S = S[:, None]
    K = K[:, None]
    z = np.empty((s.size, z0.size))
    z[:, 0::2] = x0 + A * S + B * K
    z[:, 1::2] = y0 - A * K + B * S
    t = t0 + V + np.sum((A * x0 + B * y0) * K - (B * x0 - A * y0) * S, axis=1)
    c2 = np.cos(2.0 * lam * s)[:, None]
    s2 = np.sin(2.0 * lam * s)[:, None]
    zdot = np.empty_like(z)
    zdot[:, 0::2] = A * c2 + B * s2
    zdot[:, 1::2] = -A * s2 + B * c2
    return z, t, zdot


def geodesic_state(g: GeodesicSpec, s: float) -> GeodesicState:
    z, t, zdot = closed_form(g.lam, g.p0.z, g.p0.t, g.v0.a, s)
    return GeodesicState(float(s), Point(z[0], t[0]), FrameVector(zdot[0]))


def geodesic_trace(g: GeodesicSpec, s_values):
    """Closed-form samples as arrays ``(z, t, zdot)`` for an array of arc parameters."""
    return closed_form(g.lam, g.p0.z, g.p0.t, g.v0.a, s_values)


def ode_trajectory(lam, p0s, v0s, length, steps):
    """RK4 trajectories for a batch of start points and horizontal velocities.

    ``p0s`` has shape (m, 2n+1) and ``v0s`` shape (m, 2n).  Returns
    ``(s_grid, z, t, zdot)`` with z of shape (steps+1, m, 2n).
    """
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    p0s = np.atleast_2d(np.asarray(p0s, dtype=np.float64))
    v0s = np.atleast_2d(np.asarray(v0s, dtype=np.float64))
    zs, ts, ws = kernels.rk4_geodesic(
        float(lam),
        np.ascontiguousarray(p0s[:, :-1]),
        np.ascontiguousarray(p0s[:, -1]),
        np.ascontiguousarray(v0s),
        float(length),
        int(steps),
    )
    return np.linspace(0.0, length, steps + 1), zs, ts, ws


def geodesic_ode_oracle(g: GeodesicSpec, s: float, steps: int) -> GeodesicState:
    _, zs, ts, ws = ode_trajectory(g.lam, g.p0.as_array(), g.v0.a, s, steps)
    point = Point(zs[-1, 0], ts[-1, 0])
    zdot = ws[-1, 0]
    # express the coordinate velocity on the frame; horizontal by construction of t'
    return GeodesicState(float(s), point, FrameVector(zdot))


def horizontality_defect(z, t_dot, zdot):
    """|t' - sum(x' y - x y')|, the T-frame coefficient of the velocity."""
    z = np.asarray(z)
    zdot = np.asarray(zdot)
    return np.abs(t_dot - np.sum(zdot[..., 0::2] * z[..., 1::2] - z[..., 0::2] * zdot[..., 1::2], axis=-1))


def identity_coefficient(lam, s):
    """lam sin(2 lam s) / (1 - cos(2 lam s)), with the denominator as 2 sin(lam s)^2."""
    s = np.asarray(s, dtype=np.float64)
    den = 2.0 * np.sin(lam * s) ** 2
    return lam * np.sin(2.0 * lam * s) / den


def geodesic_identity_residuals(g: GeodesicSpec, s: float) -> tuple[float, float]:
    """Residuals of x_i' = k x_i + lam y_i and y_i' = -lam x_i + k y_i for geodesics from the t-axis."""
    lam = g.lam
    if lam == 0.0:
        raise DomainError("the velocity identities need nonzero curvature")
    if np.any(g.p0.z != 0.0):
        raise DomainError("the velocity identities need a start point on the t-axis")
    if not 0.0 < lam * s < np.pi:
        raise DomainError(f"s must lie strictly inside (0, pi/lam); 1 - cos(2 lam s) vanishes at s = {s!r}")
    z, _, zdot = closed_form(lam, g.p0.z, g.p0.t, g.v0.a, s)
    k = float(identity_coefficient(lam, s))
    x, y = z[0, 0::2], z[0, 1::2]
    xd, yd = zdot[0, 0::2], zdot[0, 1::2]
    rx = np.max(np.abs(xd - k * x - lam * y))
    ry = np.max(np.abs(yd + lam * x - k * y))
    return float(rx), float(ry)
