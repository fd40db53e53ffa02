"""Thin wrappers over the quadrature kernels that raise on failure."""

import numpy as np

from . import kernels
from .errors import DomainError, QuadratureError

DEFAULT_LIMIT = 4000

_STATUS_TEXT = {
    kernels.STATUS_LIMIT: "interval limit reached",
    kernels.STATUS_ROUNDOFF: "roundoff prevents further subdivision",
}


def _check_tol(tol):
    if not tol > 0:
        raise DomainError(f"quadrature tolerance must be positive, got {tol!r}")


def _finish(value, error, status, tol, what):
    if status != kernels.STATUS_OK or not np.isfinite(value):
        reason = _STATUS_TEXT.get(status, "non-finite result")
        raise QuadratureError(f"{what}: {reason} (estimate {value:.17g}, error {error:.3g}, tol {tol:.3g})")
    return float(value)


def integrate(kind, a, b, params, tol, limit=DEFAULT_LIMIT, what="integral"):
    """Adaptive G7-K15 on [a, b]; ``tol`` is used as both absolute and relative bound."""
    _check_tol(tol)
    params = np.ascontiguousarray(params, dtype=np.float64)
    value, error, status = kernels.adaptive_gk15(kind, float(a), float(b), params, tol, tol, limit)
    return _finish(value, error, status, tol, what)


def integrate_pieces(kind, breaks, coefs, extra, tol, limit=DEFAULT_LIMIT, what="integral"):
    """Sum of adaptive integrals over consecutive cubic pieces."""
    _check_tol(tol)
    value, error, status = kernels.piecewise_integrate(
        kind,
        np.ascontiguousarray(breaks, dtype=np.float64),
        np.ascontiguousarray(coefs, dtype=np.float64),
        np.ascontiguousarray(extra, dtype=np.float64),
        tol,
        tol,
        limit,
    )
    return _finish(value, error, status, tol, what)
