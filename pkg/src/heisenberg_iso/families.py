"""Builtin candidate sets: spheres, slabs, bumps, cones and a seeded random family."""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .pansu import PansuSphere, profile_height
from .radial import RadialSet, from_values

SPHERE_KNOTS = 200


def sphere_grid(lam: float, knots: int = SPHERE_KNOTS) -> np.ndarray:
    """Radii sin(theta)/lam on a uniform theta grid; clusters knots at the equator."""
    theta = np.linspace(0.0, 0.5 * np.pi, knots)
    grid = np.sin(theta) / lam
    grid[-1] = 1.0 / lam
    return grid


def sphere_set(lam: float, n: int, knots: int = SPHERE_KNOTS) -> RadialSet:
    """B_lam sampled on ``knots`` radii."""
    grid = sphere_grid(lam, knots)
    return from_values(n, 1.0 / lam, grid, profile_height(PansuSphere(n, lam), grid))


def slab_set(h: float, r: float, n: int) -> RadialSet:
    if not (h >= 0 and r > 0):
        raise DomainError(f"slab needs h >= 0 and r > 0, got h={h!r}, r={r!r}")
    grid = np.array([0.0, r])
    return from_values(n, r, grid, np.full(2, float(h)))


def bump_set(amplitude: float, lam: float, n: int, knots: int = SPHERE_KNOTS) -> RadialSet:
    """Sphere with amplitude * sin^2(pi lam r) added to the upper profile."""
    grid = sphere_grid(lam, knots)
    base = profile_height(PansuSphere(n, lam), grid)
    upper = base + amplitude * np.sin(np.pi * lam * grid) ** 2
    return from_values(n, 1.0 / lam, grid, upper, base)


def cone_set(h: float, r: float, n: int) -> RadialSet:
    """Double cone of height h over the disk of radius r."""
    if not (h > 0 and r > 0):
        raise DomainError(f"cone needs h > 0 and r > 0, got h={h!r}, r={r!r}")
    grid = np.linspace(0.0, r, 3)
    return from_values(n, r, grid, h * (1.0 - grid / r))


def random_family(n: int, count: int, seed: int = 0, knots: int = 24,
                  log_amp=(-4.0, np.log10(0.5)), r_range=(0.5, 2.0)):
    """Seeded admissible perturbations of the sphere with a random cylinder radius.

    Each profile is ``f(r) exp(a xi(r)) + b eta(r)`` with ``xi`` a random
    low-frequency cosine series, ``eta`` a non-negative one and log-uniform
    amplitudes ``a, b``; roughly one set in four has ``b = 0`` and so
    vanishes on the cylinder wall.
    """
    rng = np.random.default_rng(seed)
    sets = []
    for _ in range(count):
        r_cyl = float(np.exp(rng.uniform(*np.log(r_range))))
        lam = 1.0 / r_cyl
        grid = sphere_grid(lam, knots)
        grid[-1] = r_cyl
        base = profile_height(PansuSphere(n, lam), grid)
        scale = base[0]
        profiles = []
        for _half in range(2):
            a = 10.0 ** rng.uniform(*log_amp)
            b = 0.0 if rng.random() < 0.25 else 10.0 ** rng.uniform(*log_amp)
            modes = np.arange(4)
            phase = np.cos(np.pi * np.outer(grid / r_cyl, modes))
            xi = phase @ (rng.standard_normal(4) / (1.0 + modes))
            eta = (phase @ (rng.standard_normal(4) / (1.0 + modes))) ** 2
            eta /= max(1.0, float(eta.max()))
            profiles.append(base * np.exp(a * xi) + b * scale * eta)
        sets.append(from_values(n, r_cyl, grid, profiles[0], profiles[1]))
    return sets
