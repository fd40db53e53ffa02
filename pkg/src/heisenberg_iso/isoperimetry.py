"""The inequality chain |dE| >= f(lam) >= f(mu) = |dB_mu| for candidate sets.

``f(rho) = kappa(rho) |E| + |dB_rho| - kappa(rho) |B_rho|`` where ``kappa`` is
the calibration constant as a function of the curvature (see
:func:`heisenberg_iso.calibration.kappa_function`).  ``lam`` is fixed to
``1/r_cyl``; ``mu`` solves ``|B_mu| = |E|``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .calibration import kappa_function
from .errors import DomainError, InvariantError
from .pansu import PansuSphere, ball_volume, profile_height, sphere_area
from .radial import DEFAULT_TOL, RadialProfile, RadialSet, require_valid, set_perimeter, set_volume

CHAIN_TOL = 1e-6
_MIN_QUAD_TOL = 1e-13


@dataclass(frozen=True)
class DeficitReport:
    volume: float
    perimeter: float
    lam: float
    mu: float
    sphere_perimeter: float
    estimate_rhs: float
    deficit: float
    kappa_slope: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        order = ("volume", "perimeter", "lambda", "mu", "sphere_perimeter", "estimate_rhs", "deficit", "kappa_slope")
        return {k: d[k] for k in order}


def _sphere(n, rho):
    return PansuSphere(n, rho)


def check_estimate(E: RadialSet, tol: float = DEFAULT_TOL, convention: str = "measured") -> tuple[float, float]:
    """(|dE|, |dB_lam| + kappa(lam) (|E| - |B_lam|)) with lam = 1/r_cyl."""
    lam = E.lam
    kappa = kappa_function(E.n, convention)(lam)
    S = _sphere(E.n, lam)
    lhs = set_perimeter(E, tol)
    rhs = sphere_area(S, tol) + kappa * (set_volume(E, tol) - ball_volume(S, tol))
    return lhs, rhs


def f_rho(vol: float, n: int, rho: float, tol: float = DEFAULT_TOL, convention: str = "measured") -> float:
    if not (vol > 0 and rho > 0):
        raise DomainError(f"f(rho) needs vol > 0 and rho > 0, got vol={vol!r}, rho={rho!r}")
    kappa = kappa_function(n, convention)(rho)
    S = _sphere(n, rho)
    return kappa * vol + sphere_area(S, tol) - kappa * ball_volume(S, tol)


def f_prime(vol: float, n: int, rho: float, tol: float = DEFAULT_TOL, convention: str = "measured") -> float:
    """kappa'(rho) (vol - |B_rho|); the area and volume derivative terms cancel by stationarity."""
    if not (vol > 0 and rho > 0):
        raise DomainError(f"f'(rho) needs vol > 0 and rho > 0, got vol={vol!r}, rho={rho!r}")
    slope = kappa_function(n, convention).slope
    return slope * (vol - ball_volume(_sphere(n, rho), tol))


def find_mu(vol: float, n: int, tol: float = DEFAULT_TOL) -> float:
    """The radius parameter mu with |B_mu| = vol, by bracketing bisection.

    |B_rho| is strictly decreasing onto (0, inf), so a sign change is always
    found by doubling or halving from rho = 1.
    """
    if not vol > 0:
        raise DomainError(f"volume must be positive, got {vol!r}")
    qtol = max(tol * 1e-2, _MIN_QUAD_TOL)

    def excess(rho):
        return ball_volume(_sphere(n, rho), qtol) - vol

    lo = hi = 1.0
    g = excess(1.0)
    if g == 0.0:
        return 1.0
    if g > 0:
        while excess(hi) > 0:
            lo, hi = hi, 2.0 * hi
    else:
        while excess(lo) < 0:
            lo, hi = 0.5 * lo, lo
    while True:
        mid = 0.5 * (lo + hi)
        g = excess(mid)
        if abs(g) <= tol * vol or not (lo < mid < hi) or hi - lo <= 4 * np.finfo(float).eps * hi:
            return mid
        if g > 0:
            lo = mid
        else:
            hi = mid


def deficit(E: RadialSet, tol: float = DEFAULT_TOL, chain_tol: float = CHAIN_TOL,
            convention: str = "measured") -> DeficitReport:
    """Evaluate the whole chain and raise :class:`InvariantError` if an inequality fails."""
    require_valid(E)
    n = E.n
    vol = set_volume(E, tol)
    per = set_perimeter(E, tol)
    lam = E.lam
    kappa = kappa_function(n, convention)
    f_lam = f_rho(vol, n, lam, tol, convention)
    mu = find_mu(vol, n, tol)
    f_mu = f_rho(vol, n, mu, tol, convention)
    sphere_per = sphere_area(_sphere(n, mu), tol)
    slack = chain_tol * per
    if per + slack < f_lam:
        raise InvariantError(f"|dE| = {per:.17g} < f(lambda) = {f_lam:.17g}")
    if f_lam + slack < f_mu:
        raise InvariantError(f"f(lambda) = {f_lam:.17g} < f(mu) = {f_mu:.17g}")
    return DeficitReport(
        volume=vol,
        perimeter=per,
        lam=lam,
        mu=mu,
        sphere_perimeter=sphere_per,
        estimate_rhs=f_lam,
        deficit=per - sphere_per,
        kappa_slope=kappa.slope,
    )



def sphere_profile_distance(E: RadialSet, samples: int = 2001) -> float:
    """Max-norm distance from both profiles of E to B_lam, lam = 1/r_cyl.

    The reference is the sphere profile sampled on E's own knots and
    interpolated the same way, so interpolation error near the equator
    (where f has infinite slope) is not counted as shape difference.
    A proximity measure only.
    """
    grid = E.u_plus.grid
    ref = RadialProfile(grid, profile_height(_sphere(E.n, E.lam), grid))
    r = np.linspace(0.0, grid[-1], samples)
    r[-1] = grid[-1]
    base = ref(r)
    return float(max(np.max(np.abs(E.u_plus(r) - base)), np.max(np.abs(E.u_minus(r) - base))))
