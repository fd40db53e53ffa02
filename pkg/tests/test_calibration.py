import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from heisenberg_iso.calibration import (
    CalibrationField,
    boundary_flux,
    calibration_constant,
    disk_flux,
    field_at,
    field_coefficients,
    field_divergence_exact,
    flux_balance,
    kappa_function,
    measure_divergence,
    sample_points,
)
from heisenberg_iso.errors import DomainError
from heisenberg_iso.families import random_family, slab_set, sphere_set
from heisenberg_iso.group import FrameVector


def sympy_divergence(n, half):
    """Divergence of the frame coefficients, derived symbolically."""
    lam = sp.Symbol("lam", positive=True)
    xs = sp.symbols(f"x1:{n + 1}", real=True)
    ys = sp.symbols(f"y1:{n + 1}", real=True)
    r = sp.sqrt(sum(x**2 + y**2 for x, y in zip(xs, ys)))
    c = sp.sqrt(1 - lam**2 * r**2) / r
    if half == "lower":
        c = -c
    div = sum(sp.diff(-lam * x - c * y, x) + sp.diff(-lam * y + c * x, y) for x, y in zip(xs, ys))
    return sp.simplify(div)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("half", ["upper", "lower"])
def test_symbolic_divergence_is_minus_two_n_lambda(n, half):
    lam = sp.Symbol("lam", positive=True)
    assert sp.simplify(sympy_divergence(n, half) + 2 * n * lam) == 0


def test_field_is_unit_everywhere():
    for n, lam in ((1, 1.0), (2, 0.5), (3, 2.0)):
        z = sample_points(n, lam, 1000, seed=3, inner=0.001, outer=1.0)
        for half in ("upper", "lower"):
            a = field_coefficients(CalibrationField(n, lam, half), z)
            assert np.max(np.abs(np.linalg.norm(a, axis=1) - 1.0)) < 1e-13


@settings(max_examples=50)
@given(st.lists(st.floats(-1, 1), min_size=4, max_size=4), st.lists(st.floats(-1, 1), min_size=4, max_size=4))
def test_calibration_bound(zs, ws):
    z = np.asarray(zs)
    w = np.asarray(ws)
    if not (0.01 < np.linalg.norm(z) <= 1.0) or np.linalg.norm(w) < 1e-6:
        return
    w = FrameVector(w / np.linalg.norm(w))
    assert field_at(CalibrationField(2, 1.0), z).dot(w) <= 1.0 + 1e-14


def test_equator_value_and_halves_agree():
    lam = 1.5
    z = np.array([0.3, -0.4, 0.1, 0.2])
    z = z / np.linalg.norm(z) / lam
    up = field_at(CalibrationField(2, lam, "upper"), z)
    lo = field_at(CalibrationField(2, lam, "lower"), z)
    assert np.allclose(up.a, -lam * z, atol=1e-14)
    assert np.allclose(up.a, lo.a, atol=1e-14)


def test_domain_errors():
    F = CalibrationField(1, 1.0)
    with pytest.raises(DomainError):
        field_at(F, [0.0, 0.0])
    with pytest.raises(DomainError):
        field_at(F, [1.2, 0.0])
    with pytest.raises(DomainError):
        measure_divergence(F, [1e-5, 0.0], h=1e-5)


def test_measured_divergence_examples():
    assert measure_divergence(CalibrationField(1, 1.0), [0.5, 0.3]) == pytest.approx(-2.0, abs=1e-6)
    z = sample_points(2, 1.0, 1, seed=9)[0]
    assert measure_divergence(CalibrationField(2, 1.0), z) == pytest.approx(-4.0, abs=1e-6)


def test_measured_matches_exact_partials():
    F = CalibrationField(2, 0.8, "lower")
    for z in sample_points(2, 0.8, 20, seed=2):
        assert measure_divergence(F, z) == pytest.approx(field_divergence_exact(F, z), abs=1e-6)


@pytest.mark.parametrize("n", [1, 2])
def test_constant_reports_both_conventions(n):
    c = calibration_constant(n, 1.0)
    assert c.spread <= 1e-6
    assert c.kappa == pytest.approx(c.derived, abs=1e-6)
    assert c.stated == n * 1.0 and c.derived == 2 * n * 1.0


def test_kappa_function_conventions():
    assert kappa_function(2, "stated")(0.5) == 1.0
    assert kappa_function(2)(0.5) == pytest.approx(2.0, abs=1e-6)
    with pytest.raises(ValueError):
        kappa_function(1, "other")


@pytest.mark.parametrize("n", [1, 2])
def test_disk_flux_oracle(n):
    up = disk_flux(CalibrationField(n, 1.0, "upper"), 1e-12)
    lo = disk_flux(CalibrationField(n, 1.0, "lower"), 1e-12)
    assert up == pytest.approx(oracles.disk_flux_upper(n), rel=1e-10)
    assert lo == pytest.approx(-up, rel=1e-14)


def test_disk_flux_n1_value():
    assert disk_flux(CalibrationField(1, 1.0)) == pytest.approx(-math.pi**2 / 8, rel=1e-10)


@pytest.mark.parametrize("half", ["upper", "lower"])
def test_sphere_saturates(half):
    E = sphere_set(1.0, 1, 400)
    bal = flux_balance(CalibrationField(1, 1.0, half), E, 1e-11)
    assert abs(bal.residual) <= 1e-6
    assert abs(bal.saturation_gap) <= 1e-6
    assert bal.boundary_flux == pytest.approx(math.pi**2 / 2, rel=1e-6)


def test_slab_balances_without_saturating():
    E = slab_set(1.0, 1.0, 1)
    for half in ("upper", "lower"):
        bal = flux_balance(CalibrationField(1, 1.0, half), E, 1e-11)
        assert abs(bal.residual) <= 1e-6
        assert bal.saturation_gap > 0.1


def test_identity_is_linear_in_kappa():
    E = random_family(1, 1, seed=4)[0]
    F = CalibrationField(1, E.lam)
    base = flux_balance(F, E, 1e-11)
    shifted = flux_balance(F, E, 1e-11, kappa=base.kappa + 0.1)
    assert shifted.residual - base.residual == pytest.approx(-0.1 * base.volume, rel=1e-12)


def test_field_curvature_must_match_cylinder():
    with pytest.raises(DomainError):
        flux_balance(CalibrationField(1, 2.0), slab_set(1.0, 1.0, 1))


def test_sign_error_hook_breaks_identity():
    E = sphere_set(1.0, 1, 400)
    F = CalibrationField(1, 1.0)
    assert abs(flux_balance(F, E).residual) < 1e-6
    assert abs(flux_balance(F.mutated(), E).residual) > 0.5


def test_boundary_flux_bounded_by_area():
    for E in random_family(2, 10, seed=8):
        for half in ("upper", "lower"):
            bal = flux_balance(CalibrationField(2, E.lam, half), E, 1e-10)
            assert bal.boundary_flux <= bal.boundary_area * (1 + 1e-12)
            assert boundary_flux(CalibrationField(2, E.lam, half), E, 1e-10) == pytest.approx(bal.boundary_flux)
