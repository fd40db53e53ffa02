"""Invariant battery behind ``heisenberg-iso verify``.

Each check records a measured residual and the bar it must stay strictly
below.  ``threshold`` overrides every bar at once (a zero bar fails all).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calibration import CalibrationField, calibration_constant, flux_balance
from .families import random_family, sphere_set
from .geodesics import GeodesicSpec, closed_form, geodesic_identity_residuals, ode_trajectory
from .group import FrameVector, Point
from .pansu import PansuSphere, ball_volume, char_curve_residual, sphere_area, stationarity_residual

BARS = {
    "divergence_spread": 1e-6,
    "kappa_vs_2n_lambda": 1e-6,
    "flux_identity_sphere": 1e-6,
    "flux_identity_random": 1e-6,
    "saturation_sphere": 1e-6,
    "geodesic_vs_rk4": 1e-8,
    "pole_closure": 1e-10,
    "characteristic_curves": 1e-9,
    "velocity_identities": 1e-12,
    "stationarity": 1e-4,
    "homogeneity_area": 1e-8,
    "homogeneity_volume": 1e-8,
}

QUAD_TOL = 1e-10
RK4_STEPS = 10_000
# PCHIP error on the sampled sphere is O(knots^-3) and scales with lam^-(2n+1)
SPHERE_KNOTS = 800


@dataclass(frozen=True)
class Check:
    name: str
    n: int
    lam: float | None
    residual: float
    bar: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual < self.bar)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "lambda": self.lam,
            "residual": self.residual,
            "threshold": self.bar,
            "passed": self.passed,
        }


def random_unit_velocities(n: int, count: int, rng) -> np.ndarray:
    v = rng.standard_normal((count, 2 * n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _geodesic_checks(n, lam, rng):
    v0s = random_unit_velocities(n, 4, rng)
    length = np.pi / lam
    p0s = np.zeros((len(v0s), 2 * n + 1))
    p0s[:, -1] = -np.pi / (4 * lam * lam)
    s_grid, zs, ts, _ = ode_trajectory(lam, p0s, v0s, length, RK4_STEPS)
    err = 0.0
    closure = 0.0
    for j, v in enumerate(v0s):
        z, t, _ = closed_form(lam, p0s[j, :-1], p0s[j, -1], v, s_grid)
        err = max(err, float(np.max(np.abs(z - zs[:, j]))), float(np.max(np.abs(t - ts[:, j]))))
        zc, tc, _ = closed_form(lam, p0s[j, :-1], p0s[j, -1], v, length)
        closure = max(closure, float(np.max(np.abs(zc))), abs(float(tc[0]) - np.pi / (4 * lam * lam)))
    ident = 0.0
    for v in v0s:
        g = GeodesicSpec(lam, Point.origin(n), FrameVector(v))
        for s in np.linspace(0, length, 41)[1:-1]:
            ident = max(ident, *geodesic_identity_residuals(g, s))
    char = max(char_curve_residual(PansuSphere(n, lam), FrameVector(v), 100) for v in v0s)
    return [("geodesic_vs_rk4", err), ("pole_closure", closure),
            ("velocity_identities", ident), ("characteristic_curves", char)]


def run_verify(ns=(1, 2), lambdas=(0.5, 1.0, 2.0), seed: int = 0, threshold: float | None = None,
               inject_sign_error: bool = False) -> dict:
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    kappas = []

    def add(name, n, lam, residual):
        bar = BARS[name] if threshold is None else threshold
        checks.append(Check(name, n, lam, float(residual), bar))

    for n in ns:
        areas, vols = [], []
        for lam in lambdas:
            const = calibration_constant(n, lam, samples=100, seed=seed)
            kappas.append({"n": n, "lambda": lam, "measured": const.kappa,
                           "stated_n_lambda": const.stated, "derived_2n_lambda": const.derived})
            add("divergence_spread", n, lam, const.spread)
            add("kappa_vs_2n_lambda", n, lam, abs(const.kappa - const.derived))

            E = sphere_set(lam, n, knots=SPHERE_KNOTS)
            sphere_res, sat = 0.0, 0.0
            for half in ("upper", "lower"):
                F = CalibrationField(n, lam, half, inject_sign_error=inject_sign_error)
                bal = flux_balance(F, E, QUAD_TOL, const.kappa)
                sphere_res = max(sphere_res, abs(bal.residual))
                sat = max(sat, abs(bal.saturated_residual))
            add("flux_identity_sphere", n, lam, sphere_res)
            add("saturation_sphere", n, lam, sat)

            for name, value in _geodesic_checks(n, lam, rng):
                add(name, n, lam, value)
            add("stationarity", n, lam, stationarity_residual(n, lam, 1e-4, 1e-12, const.kappa))
            S = PansuSphere(n, lam)
            areas.append(sphere_area(S, QUAD_TOL) * lam ** (2 * n + 1))
            vols.append(ball_volume(S, QUAD_TOL) * lam ** (2 * n + 2))

        rand_res = 0.0
        for E in random_family(n, 5, seed=seed, log_amp=(np.log10(0.05), np.log10(0.5))):
            for half in ("upper", "lower"):
                F = CalibrationField(n, E.lam, half, inject_sign_error=inject_sign_error)
                rand_res = max(rand_res, abs(flux_balance(F, E, QUAD_TOL).residual))
        add("flux_identity_random", n, None, rand_res)
        add("homogeneity_area", n, None, (max(areas) - min(areas)) / max(areas))
        add("homogeneity_volume", n, None, (max(vols) - min(vols)) / max(vols))

    return {
        "seed": seed,
        "n": list(ns),
        "lambda": list(lambdas),
        "kappa": kappas,
        "checks": [c.as_dict() for c in checks],
        "passed": all(c.passed for c in checks),
    }
