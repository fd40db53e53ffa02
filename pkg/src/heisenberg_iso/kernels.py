"""Numeric inner loops: adaptive Gauss-Kronrod quadrature and RK4.

Every function here is decorated with :func:`heisenberg_iso._accel.jit`, so
it is numba-compiled by default and runs as plain numpy when
``HEISENBERG_ISO_PURE_NUMPY=1``.  Integrands are selected by an integer
code instead of a callable; that keeps the number of numba
specializations at one per kernel.

Integrand codes and their parameter vectors ``p``:

``SPHERE_AREA``   theta-substituted ``r^{2n} / sqrt(1 - lam^2 r^2) dr``, p = (lam, n)
``BALL_VOLUME``   theta-substituted ``f(r) r^{2n-1} dr``, p = (lam, n)
``DISK_FLUX``     theta-substituted ``r^{2n} sqrt(1 - lam^2 r^2) dr``, p = (lam, n)
``CUBIC_MOMENT``  ``u(r) r^k`` on one cubic piece, p = (c0, c1, c2, c3, x0, k)
``GRAPH_AREA``    ``sqrt(u'(r)^2 + r^2) r^k``, same p
``GRAPH_FLUX``    ``r^k <field, N>`` with field (-lam r, s_c sqrt(1 - lam^2 r^2))
                  and inner graph normal (u'(r), s_o r) on (X_1, Y_1),
                  p = (c0, c1, c2, c3, x0, k, lam, s_c, s_o)

A cubic piece is ``u(r) = c0 d^3 + c1 d^2 + c2 d + c3`` with ``d = r - x0``
(the scipy ``PPoly`` coefficient order).
"""

import numpy as np

from ._accel import jit

SPHERE_AREA = 0
BALL_VOLUME = 1
DISK_FLUX = 2
CUBIC_MOMENT = 3
GRAPH_AREA = 4
GRAPH_FLUX = 5

STATUS_OK = 0
STATUS_LIMIT = 1
STATUS_ROUNDOFF = 2

# 15-point Kronrod nodes on [-1, 1] (positive half, descending) and weights;
# odd indices are the embedded 7-point Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full 15-node layout: x = [-xgk[0..6], 0, +xgk[6..0]]
NODES = np.concatenate((-_XGK[:7], _XGK[7:8], _XGK[6::-1]))
KRONROD_W = np.concatenate((_WGK[:7], _WGK[7:8], _WGK[6::-1]))
GAUSS_W = np.zeros(15)
GAUSS_W[1] = GAUSS_W[13] = _WG[0]
GAUSS_W[3] = GAUSS_W[11] = _WG[1]
GAUSS_W[5] = GAUSS_W[9] = _WG[2]
GAUSS_W[7] = _WG[3]

_EPMACH = np.finfo(np.float64).eps
_UFLOW = np.finfo(np.float64).tiny


@jit
def _theta_profile(theta, lam):
    # f(sin(theta)/lam) written without arccos: arccos(sin theta) = pi/2 - theta
    return (np.sin(theta) * np.cos(theta) + 0.5 * np.pi - theta) / (2.0 * lam * lam)


@jit
def eval_integrand(kind, x, p):
    if kind == SPHERE_AREA:
        lam = p[0]
        k = 2.0 * p[1]
        r = np.sin(x) / lam
        # dr = cos(theta)/lam dtheta cancels sqrt(1 - lam^2 r^2) = cos(theta)
        return r**k / lam
    if kind == BALL_VOLUME:
        lam = p[0]
        k = 2.0 * p[1] - 1.0
        r = np.sin(x) / lam
        return _theta_profile(x, lam) * r**k * np.cos(x) / lam
    if kind == DISK_FLUX:
        lam = p[0]
        k = 2.0 * p[1]
        r = np.sin(x) / lam
        c = np.cos(x)
        return r**k * c * c / lam
    d = x - p[4]
    k = p[5]
    if kind == CUBIC_MOMENT:
        u = ((p[0] * d + p[1]) * d + p[2]) * d + p[3]
        return u * x**k
    du = (3.0 * p[0] * d + 2.0 * p[1]) * d + p[2]
    if kind == GRAPH_AREA:
        return np.sqrt(du * du + x * x) * x**k
    # GRAPH_FLUX: <field, nu_H> |N_H| per unit Lebesgue measure, evaluated at
    # z = (r, 0, ..., 0); rotational symmetry makes this the general value
    lam = p[6]
    q = np.sqrt(np.maximum(0.0, 1.0 - lam * lam * x * x))
    field_x = -lam * x
    field_y = p[7] * q
    normal_x = du
    normal_y = p[8] * x
    return (field_x * normal_x + field_y * normal_y) * x**k


@jit
def gk15(kind, a, b, p):
    """One 15-point Kronrod rule on [a, b]: (integral, error estimate, |f| integral)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fv = eval_integrand(kind, center + half * NODES, p)
    resk = np.sum(KRONROD_W * fv)
    resg = np.sum(GAUSS_W * fv)
    resabs = np.sum(KRONROD_W * np.abs(fv))
    reskh = 0.5 * resk
    resasc = np.sum(KRONROD_W * np.abs(fv - reskh))
    result = resk * half
    resabs = resabs * abs(half)
    resasc = resasc * abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPMACH):
        err = max(_EPMACH * 50.0 * resabs, err)
    return result, err, resabs


@jit
def adaptive_gk15(kind, a, b, p, epsabs, epsrel, limit):
    """Globally adaptive bisection driven by the largest local error.

    Returns ``(value, error, status)``; the value is summed in order of
    interval position so the result is independent of refinement history.
    """
    lo = np.empty(limit)
    hi = np.empty(limit)
    val = np.empty(limit)
    err = np.empty(limit)
    lo[0] = a
    hi[0] = b
    val[0], err[0], _ = gk15(kind, a, b, p)
    m = 1
    status = STATUS_OK
    while True:
        total = np.sum(val[:m])
        errsum = np.sum(err[:m])
        if errsum <= max(epsabs, epsrel * abs(total)):
            break
        if m >= limit:
            status = STATUS_LIMIT
            break
        j = np.argmax(err[:m])
        mid = 0.5 * (lo[j] + hi[j])
        if not (lo[j] < mid < hi[j]):
            status = STATUS_ROUNDOFF
            break
        v1, e1, _ = gk15(kind, lo[j], mid, p)
        v2, e2, _ = gk15(kind, mid, hi[j], p)
        lo[m] = mid
        hi[m] = hi[j]
        val[m] = v2
        err[m] = e2
        hi[j] = mid
        val[j] = v1
        err[j] = e1
        m += 1
    order = np.argsort(lo[:m])
    total = 0.0
    for i in order:
        total += val[i]
    return total, np.sum(err[:m]), status


@jit
def piecewise_integrate(kind, breaks, coefs, extra, epsabs, epsrel, limit):
    """Integrate a cubic-piece integrand over every knot interval.

    ``coefs`` has shape (4, m) for m = len(breaks) - 1 pieces; ``extra`` is
    appended to each piece's parameter vector after (c0..c3, x0).  The
    absolute tolerance is shared among pieces in proportion to their width.
    """
    m = breaks.size - 1
    width = breaks[-1] - breaks[0]
    p = np.empty(5 + extra.size)
    p[5:] = extra
    total = 0.0
    errsum = 0.0
    status = STATUS_OK
    for j in range(m):
        a = breaks[j]
        b = breaks[j + 1]
        p[0] = coefs[0, j]
        p[1] = coefs[1, j]
        p[2] = coefs[2, j]
        p[3] = coefs[3, j]
        p[4] = a
        share = epsabs * (b - a) / width
        v, e, s = adaptive_gk15(kind, a, b, p, share, epsrel, limit)
        total += v
        errsum += e
        if s != STATUS_OK and status == STATUS_OK:
            status = s
    return total, errsum, status


@jit
def _geodesic_rhs(lam, z, w):
    # z, w have shape (m, 2n), interleaved (x_1, y_1, ...); returns (dw, dt)
    dw = np.empty_like(w)
    dw[:, 0::2] = 2.0 * lam * w[:, 1::2]
    dw[:, 1::2] = -2.0 * lam * w[:, 0::2]
    dt = np.sum(w[:, 0::2] * z[:, 1::2] - z[:, 0::2] * w[:, 1::2], axis=1)
    return dw, dt


@jit
def rk4_geodesic(lam, z0, t0, w0, length, steps):
    """Classical fixed-step RK4 for x'' = 2 lam y', y'' = -2 lam x', t' = sum(x' y - x y').

    Batched over rows of ``z0``/``w0``.  Returns trajectories of shape
    (steps + 1, m, 2n) for z and w and (steps + 1, m) for t.
    """
    h = length / steps
    m, d = z0.shape
    zs = np.empty((steps + 1, m, d))
    ws = np.empty((steps + 1, m, d))
    ts = np.empty((steps + 1, m))
    z = z0.copy()
    w = w0.copy()
    t = t0.copy()
    zs[0] = z
    ws[0] = w
    ts[0] = t
    for k in range(steps):
        a_w, a_t = _geodesic_rhs(lam, z, w)
        a_z = w
        z2 = z + 0.5 * h * a_z
        w2 = w + 0.5 * h * a_w
        b_w, b_t = _geodesic_rhs(lam, z2, w2)
        b_z = w2
        z3 = z + 0.5 * h * b_z
        w3 = w + 0.5 * h * b_w
        c_w, c_t = _geodesic_rhs(lam, z3, w3)
        c_z = w3
        z4 = z + h * c_z
        w4 = w + h * c_w
        d_w, d_t = _geodesic_rhs(lam, z4, w4)
        d_z = w4
        z = z + (h / 6.0) * (a_z + 2.0 * b_z + 2.0 * c_z + d_z)
        w = w + (h / 6.0) * (a_w + 2.0 * b_w + 2.0 * c_w + d_w)
        t = t + (h / 6.0) * (a_t + 2.0 * b_t + 2.0 * c_t + d_t)
        zs[k + 1] = z
        ws[k + 1] = w
        ts[k + 1] = t
    return zs, ts, ws
