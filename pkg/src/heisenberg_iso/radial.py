"""Rotationally symmetric candidate sets bounded by two radial graphs.

A :class:`RadialSet` is ``E = {(z, t) : |z| <= r, -u_minus(|z|) <= t <= u_plus(|z|)}``
with non-negative profiles, so that the disk ``D_r`` lies inside ``E`` and
``E`` lies inside the cylinder ``C_r``.  Only this two-graph class is
modelled; it contains every equality candidate of the isoperimetric
inequality and plenty of perturbations of them.

Profiles are shape-preserving monotone cubic (PCHIP) interpolants of their
knot values, so they never dip below zero between non-negative knots.

Perimeter of a t-graph ``t = u(|z|)``: its horizontal normal has length
``sqrt(u'(r)^2 + r^2)`` per unit Lebesgue measure in z.  The lateral wall
``|z| = r`` has a horizontal Riemannian normal (``sum x_i X_i + y_i Y_i``
up to scale), so ``|N_H| = 1`` there and it contributes its plain area.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import PchipInterpolator

from . import kernels
from .errors import ValidationError
from .group import unit_sphere_area
from .quadrature import integrate_pieces

DEFAULT_TOL = 1e-10
_UNDERSHOOT_SAMPLES = 9


@dataclass(frozen=True, eq=False)
class RadialProfile:
    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for name in ("grid", "values"):
            arr = np.array(getattr(self, name), dtype=np.float64).reshape(-1)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @cached_property
    def interpolant(self) -> PchipInterpolator:
        return PchipInterpolator(self.grid, self.values, extrapolate=False)

    @property
    def breaks(self) -> np.ndarray:
        return self.interpolant.x

    @property
    def coefs(self) -> np.ndarray:
        """PPoly coefficients, shape (4, pieces), highest power first."""
        return self.interpolant.c

    def __call__(self, r):
        return self.interpolant(r)

    def derivative(self, r):
        return self.interpolant(r, 1)

    @property
    def end_value(self) -> float:
        return float(self.values[-1])

    def scaled(self, s: float) -> RadialProfile:
        """Profile of the dilated set: grid by s, heights by s^2."""
        return RadialProfile(self.grid * s, self.values * s * s)


@dataclass(frozen=True)
class RadialSet:
    n: int
    r_cyl: float
    u_plus: RadialProfile
    u_minus: RadialProfile

    @property
    def lam(self) -> float:
        """Curvature of the sphere meeting {t = 0} along the cylinder wall."""
        return 1.0 / self.r_cyl

    def profile(self, half: str) -> RadialProfile:
        if half == "upper":
            return self.u_plus
        if half == "lower":
            return self.u_minus
        raise ValueError(f"half must be 'upper' or 'lower', got {half!r}")


def from_values(n, r_cyl, grid, u_plus, u_minus=None) -> RadialSet:
    """Build a set on one shared grid; ``u_minus`` defaults to ``u_plus``."""
    if u_minus is None:
        u_minus = u_plus
    return RadialSet(int(n), float(r_cyl), RadialProfile(grid, u_plus), RadialProfile(grid, u_minus))


def _profile_diagnostics(name, prof, r_cyl):
    out = []
    grid, values = prof.grid, prof.values
    if grid.size != values.size:
        return [f"{name}: grid has {grid.size} knots but {values.size} heights"]
    if grid.size < 2:
        return [f"{name}: needs at least 2 knots, got {grid.size}"]
    bad = ~np.isfinite(grid) | ~np.isfinite(values)
    if bad.any():
        return [f"{name}[{int(np.flatnonzero(bad)[0])}]: non-finite knot"]
    if grid[0] != 0.0:
        out.append(f"{name}: grid must start at 0, starts at {float(grid[0])!r}")
    if not np.isclose(grid[-1], r_cyl, rtol=1e-12, atol=0.0):
        out.append(f"{name}: grid must end at r_cyl = {r_cyl!r}, ends at {float(grid[-1])!r}")
    steps = np.diff(grid)
    if (steps <= 0).any():
        k = int(np.flatnonzero(steps <= 0)[0]) + 1
        out.append(f"{name}: grid not strictly increasing at knot {k} ({float(grid[k - 1])!r} -> {float(grid[k])!r})")
    for k in np.flatnonzero(values < 0):
        out.append(f"{name}[{int(k)}] = {float(values[k])!r} is negative")
    if not out:
        # PCHIP should never undershoot; checked on interior samples anyway
        frac = np.linspace(0.0, 1.0, _UNDERSHOOT_SAMPLES + 2)[1:-1]
        r = (grid[:-1, None] + steps[:, None] * frac).reshape(-1)
        u = prof(r)
        scale = max(1.0, float(np.max(values)))
        low = u < -1e-14 * scale
        if low.any():
            k = int(np.flatnonzero(low)[0]) // _UNDERSHOOT_SAMPLES
            out.append(f"{name}: interpolant undershoots 0 between knots {k} and {k + 1}")
    return out


def validate(E: RadialSet) -> list[str]:
    """Return every violated invariant as a human-readable diagnostic."""
    out = []
    if int(E.n) != E.n or E.n < 1:
        out.append(f"n must be a positive integer, got {E.n!r}")
    if not (np.isfinite(E.r_cyl) and E.r_cyl > 0):
        out.append(f"r_cyl must be positive, got {E.r_cyl!r}")
        return out
    out += _profile_diagnostics("u_plus", E.u_plus, E.r_cyl)
    out += _profile_diagnostics("u_minus", E.u_minus, E.r_cyl)
    if not out and not (E.u_plus.values.any() or E.u_minus.values.any()):
        out.append("degenerate set: both profiles vanish identically, so |E| = 0")
    return out


def require_valid(E: RadialSet) -> RadialSet:
    problems = validate(E)
    if problems:
        raise ValidationError(problems)
    return E


def _moment(prof, n, tol):
    return integrate_pieces(kernels.CUBIC_MOMENT, prof.breaks, prof.coefs, [2.0 * n - 1.0], tol, what="volume")


def _graph_area(prof, n, tol):
    return integrate_pieces(kernels.GRAPH_AREA, prof.breaks, prof.coefs, [2.0 * n - 1.0], tol, what="perimeter")


def half_volume(E: RadialSet, half: str, tol: float = DEFAULT_TOL) -> float:
    """|E^+| or |E^-|."""
    return unit_sphere_area(E.n) * _moment(E.profile(half), E.n, tol)


def half_perimeter(E: RadialSet, half: str, tol: float = DEFAULT_TOL) -> float:
    """Perimeter of the part of the boundary in {t > 0} or {t < 0}, wall included."""
    prof = E.profile(half)
    wall = E.r_cyl ** (2 * E.n - 1) * prof.end_value
    return unit_sphere_area(E.n) * (_graph_area(prof, E.n, tol) + wall)


def set_volume(E: RadialSet, tol: float = DEFAULT_TOL) -> float:
    return half_volume(E, "upper", tol) + half_volume(E, "lower", tol)


def set_perimeter(E: RadialSet, tol: float = DEFAULT_TOL) -> float:
    return half_perimeter(E, "upper", tol) + half_perimeter(E, "lower", tol)


def dilate_set(E: RadialSet, s: float) -> RadialSet:
    """Image of E under (z, t) -> (s z, s^2 t)."""
    return RadialSet(E.n, E.r_cyl * s, E.u_plus.scaled(s), E.u_minus.scaled(s))


def max_profile_distance(E: RadialSet, other, samples: int = 2001) -> float:
    """Max-norm distance of both profiles to a reference height function on [0, r_cyl]."""
    r = np.linspace(0.0, E.r_cyl, samples)
    ref = other(r)
    return float(max(np.max(np.abs(E.u_plus(r) - ref)), np.max(np.abs(E.u_minus(r) - ref))))
