import math

import numpy as np
import pytest

import kelvin_eit as ke


def test_eigenvalues():
    assert ke.lambda_hat(0, 3, 0.5) == pytest.approx(1.0, rel=1e-15)
    assert ke.lambda_diff(1, 3, 0.5) == pytest.approx(3 / 7, rel=1e-14)
    with pytest.raises(ValueError):
        ke.lambda_diff(0, 3, 1.0)


def test_bounds_sandwich():
    rho, d, r = 0.5, 3, 0.01
    result = ke.numeric_norm_ratio(rho, d, r)
    assert result.converged
    assert ke.lower_bound(rho) <= result.ratio <= ke.mid_bound(rho, d, r) + 1e-9
    assert result.ratio == pytest.approx(0.6, abs=1e-3)
    assert ke.least_upper_bound(0.5, 2) == pytest.approx(3 / 7, abs=1e-15)
    assert ke.worse_bound(0.5, 2) == pytest.approx(math.sqrt(0.6), abs=1e-12)


def test_sweep():
    reports = ke.sweep([0.5, 0.2], [0.3], [2], threads=2)
    assert [rep["rho"] for rep in reports] == [0.2, 0.5]
    assert all(rep["error"] == "" and rep["converged"] for rep in reports)
    bad = ke.sweep([1.5], [], [2])
    assert bad[0]["error"]


def test_correspondence_round_trip():
    corr = ke.correspondence_from_ball(np.array([0.4, 0.0, 0.0]), 0.4)
    assert corr.r == pytest.approx(0.5, abs=1e-15)
    back = ke.correspondence_from_concentric(corr.a, corr.r)
    assert np.allclose(back.C, [0.4, 0, 0], atol=1e-14)
    x = np.array([0.1, -0.2, 0.3])
    assert np.allclose(corr.apply(corr.apply(x)), x, atol=1e-14)


def test_dn_difference_concentric_eigenfunction():
    axis = np.array([1.0, 0.0])
    basis = ke.HarmonicBasis(2, 6, axis)
    grid = ke.circle_grid(64)
    out = ke.apply_dn_difference_concentric(0.5, basis, grid, lambda x: x[0])
    pts = grid.points
    assert np.allclose(out, ke.lambda_diff(1, 2, 0.5) * pts[0], atol=1e-12)


def test_moebius():
    a = 0.3 + 0.2j
    assert abs(ke.moebius_apply(a, a)) == 0.0
    assert ke.reflection_identity_residual(a, 0.1 - 0.5j) < 1e-13
    assert ke.intersection_check(a, 0.1 - 0.5j)["passed"]
    with pytest.raises(ZeroDivisionError):
        ke.moebius_apply(a, 1 / a.conjugate())


def test_verify_suite():
    out = ke.verify(7, ["moebius"])
    assert list(out) == ["moebius"]
    assert all(check["passed"] for check in out["moebius"])
