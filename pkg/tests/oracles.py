"""Reference values derived by hand, independent of the package internals.

Radial integrals reduce to Beta functions through r = s/lam:

    int_0^{1/lam} r^{2n} (1 - lam^2 r^2)^{-1/2} dr  = lam^{-(2n+1)} B(n + 1/2, 1/2) / 2

The ball volume follows from one integration by parts (f vanishes on the
equator), giving ``sigma B(n + 3/2, 1/2) / (2n)`` at lam = 1.
"""

from __future__ import annotations

import math

from scipy.special import beta


def sigma(n: int) -> float:
    """Area of the unit sphere S^{2n-1} in R^{2n}."""
    return 2.0 * math.pi**n / math.factorial(n - 1)


def sphere_area(n: int, lam: float = 1.0) -> float:
    return sigma(n) * beta(n + 0.5, 0.5) * lam ** -(2 * n + 1)


def ball_volume(n: int, lam: float = 1.0) -> float:
    return sigma(n) * beta(n + 1.5, 0.5) / (2 * n) * lam ** -(2 * n + 2)


def disk_flux_upper(n: int, lam: float = 1.0) -> float:
    """-sigma int_0^{1/lam} r^{2n} sqrt(1 - lam^2 r^2) dr."""
    return -sigma(n) * beta(n + 0.5, 1.5) / 2.0 * lam ** -(2 * n + 1)


def profile(lam: float, r: float) -> float:
    u = lam * r
    return (u * math.sqrt(1.0 - u * u) + math.acos(u)) / (2.0 * lam * lam)


def slab_volume(n: int, h: float, r: float) -> float:
    return 2.0 * h * sigma(n) * r ** (2 * n) / (2 * n)


def slab_perimeter(n: int, h: float, r: float) -> float:
    faces = 2.0 * sigma(n) * r ** (2 * n + 1) / (2 * n + 1)
    wall = sigma(n) * r ** (2 * n - 1) * 2.0 * h
    return faces + wall


def mu_for_volume(n: int, vol: float) -> float:
    return (ball_volume(n) / vol) ** (1.0 / (2 * n + 2))


# n = 1, h = r = 1 slab, spelled out
SLAB_PERIMETER = 16.0 * math.pi / 3.0
SLAB_VOLUME = 2.0 * math.pi
SLAB_ESTIMATE_RHS = math.pi**2 + 2.0 * (2.0 * math.pi - 3.0 * math.pi**2 / 8.0)
SLAB_MU = (3.0 * math.pi / 16.0) ** 0.25
SLAB_SPHERE_PERIMETER = math.pi**2 / SLAB_MU**3
SLAB_DEFICIT = SLAB_PERIMETER - SLAB_SPHERE_PERIMETER
