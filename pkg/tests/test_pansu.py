import math

import numpy as np
import pytest

import oracles
from heisenberg_iso.errors import DomainError
from heisenberg_iso.geodesics import closed_form, unit_horizontal
from heisenberg_iso.group import FrameVector, Point
from heisenberg_iso.pansu import (
    PansuSphere,
    ball_volume,
    char_curve_report,
    char_curve_residual,
    profile_height,
    profile_slope,
    sphere_area,
    sphere_normal,
    stationarity_residual,
)


def test_profile_values():
    S = PansuSphere(1, 1.0)
    assert profile_height(S, 1.0) == 0.0
    assert profile_height(PansuSphere(1, 2.0), 0.0) == pytest.approx(math.pi / 16, rel=1e-15)
    assert profile_height(S, 1 / math.sqrt(2)) == pytest.approx(0.25 + math.pi / 8, rel=1e-14)
    assert profile_slope(S, 0.0) == 0.0
    assert profile_slope(S, 1 / math.sqrt(2)) == pytest.approx(-1 / math.sqrt(2), rel=1e-14)


def test_profile_point_lies_on_geodesic_trace():
    # |z(s)| = sin(s) on the curvature-1 geodesic from the south pole
    z, t, _ = closed_form(1.0, np.zeros(2), -math.pi / 4, np.array([1.0, 0.0]), 3 * math.pi / 4)
    assert np.linalg.norm(z[0]) == pytest.approx(1 / math.sqrt(2), rel=1e-14)
    assert t[0] == pytest.approx(0.25 + math.pi / 8, rel=1e-14)


@pytest.mark.parametrize("lam", [0.5, 1.0, 3.0])
def test_slope_matches_finite_difference(lam):
    S = PansuSphere(2, lam)
    h = 1e-6
    for r in np.arange(1, 10) / (10 * lam):
        fd = (profile_height(S, r + h) - profile_height(S, r - h)) / (2 * h)
        assert profile_slope(S, r) == pytest.approx(fd, abs=1e-7 / lam)


def test_profile_domain():
    S = PansuSphere(1, 1.0)
    with pytest.raises(DomainError):
        profile_height(S, 1.1)
    with pytest.raises(DomainError):
        profile_slope(S, 1.0)
    with pytest.raises(DomainError):
        PansuSphere(1, 0.0)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_area_and_volume_match_beta_oracle(n, lam):
    S = PansuSphere(n, lam)
    assert sphere_area(S, 1e-12) == pytest.approx(oracles.sphere_area(n, lam), rel=1e-10)
    assert ball_volume(S, 1e-12) == pytest.approx(oracles.ball_volume(n, lam), rel=1e-10)


def test_named_closed_forms():
    assert sphere_area(PansuSphere(1, 2.0)) == pytest.approx(math.pi**2 / 8, rel=1e-10)
    assert ball_volume(PansuSphere(2, 1.0)) == pytest.approx(5 * math.pi**3 / 32, rel=1e-10)


def _equator_point(n, lam, seed):
    d = np.random.default_rng(seed).standard_normal(2 * n)
    return d / np.linalg.norm(d) / lam


@pytest.mark.parametrize("n", [1, 2])
def test_normal_is_unit_horizontal(n):
    rng = np.random.default_rng(5)
    S = PansuSphere(n, 1.5)
    for _ in range(50):
        d = rng.standard_normal(2 * n)
        z = d / np.linalg.norm(d) * rng.uniform(0.05, 0.95) / S.lam
        f = profile_height(S, np.linalg.norm(z))
        for hemi, sign in (("upper", 1), ("lower", -1)):
            nu = sphere_normal(S, Point(z, sign * f), hemi)
            assert nu.c == 0.0
            assert nu.norm() == pytest.approx(1.0, abs=1e-14)


def test_normal_on_equator_points_inward():
    S = PansuSphere(2, 2.0)
    z = _equator_point(2, 2.0, 1)
    nu = sphere_normal(S, Point(z, 0.0), "upper")
    assert np.allclose(nu.a, -S.lam * z, atol=1e-14)


def test_normal_is_orthogonal_to_the_graph():
    # Riemannian normal of t = f(|z|): grad(t - f) in frame coordinates
    S = PansuSphere(1, 1.0)
    z = np.array([0.3, 0.5])
    r = np.linalg.norm(z)
    f, fp = profile_height(S, r), profile_slope(S, r)
    x, y = z
    # X(t - f) = y - fp x / r, Y(t - f) = -x - fp y / r; inner normal points down
    raw = -np.array([y - fp * x / r, -x - fp * y / r])
    nu = sphere_normal(S, Point(z, f), "upper")
    assert np.allclose(nu.a, raw / np.linalg.norm(raw), atol=1e-14)


def test_normal_rejects_off_sphere_points():
    S = PansuSphere(1, 1.0)
    with pytest.raises(DomainError):
        sphere_normal(S, Point([0.3, 0.0], 0.0), "upper")
    with pytest.raises(DomainError):
        sphere_normal(S, S.north_pole, "upper")


def test_char_curves_basic():
    S = PansuSphere(1, 1.0)
    assert char_curve_residual(S, FrameVector.X(0, 1), 100) <= 1e-9


def test_char_curve_block_rotation():
    S = PansuSphere(2, 0.7)
    v = unit_horizontal([0.6, 0.0, 0.0, 0.8])
    c, s = math.cos(1.1), math.sin(1.1)
    w = v.a.copy()
    w[2:4] = [c * v.a[2] - s * v.a[3], s * v.a[2] + c * v.a[3]]
    a = char_curve_residual(S, v)
    b = char_curve_residual(S, FrameVector(w))
    assert a <= 1e-9 and b <= 1e-9


def test_char_curve_midpoint_on_equator():
    lam = 1.7
    z, t, _ = closed_form(lam, np.zeros(2), -PansuSphere(1, lam).pole_height, np.array([0.0, 1.0]),
                          math.pi / (2 * lam))
    assert np.linalg.norm(z[0]) == pytest.approx(1 / lam, rel=1e-14)
    assert abs(t[0]) < 1e-15


def test_char_curve_detects_wrong_curvature():
    # a curvature-2 geodesic does not stay on the curvature-1 sphere
    S = PansuSphere(1, 1.0)
    rep = char_curve_report(PansuSphere(1, 1.0), FrameVector.X(0, 1))
    assert rep.residual <= 1e-9
    z, t, _ = closed_form(2.0, np.zeros(2), -S.pole_height, np.array([1.0, 0.0]), 0.5)
    assert abs(t[0] + profile_height(S, np.linalg.norm(z[0]))) > 1e-2


@pytest.mark.parametrize("n", [1, 2])
def test_stationarity(n):
    assert stationarity_residual(n, 1.0, 1e-4) <= 1e-4


def test_stationarity_three_point_is_second_order():
    r = [stationarity_residual(1, 1.0, h, points=3, kappa=2.0) for h in (4e-3, 2e-3, 1e-3)]
    ratios = [r[0] / r[1], r[1] / r[2]]
    assert all(3.6 < q < 4.4 for q in ratios)


def test_stationarity_step_validation():
    with pytest.raises(DomainError):
        stationarity_residual(1, 1.0, 0.2)
    with pytest.raises(DomainError):
        stationarity_residual(1, 1.0, 1e-4, points=4)
