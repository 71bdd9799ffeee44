"""Analytic correlation: anchors, closed-form reduction, curve contracts."""

import math

import numpy as np
import pytest

from rxcorr.acf_analytic import (CLARKE, AcfCurve, AcfValue, acf_curve,
                                 acf_inphase, acf_quadrature_comp, acf_value,
                                 clarke_acf, default_tau_grid)
from rxcorr.angle_model import (AoaDistribution, AoaKind, make_laplacian,
                                make_uniform)

from oracles import (CLARKE_TAU_MIN, CLARKE_VAL_MAX, J0_AT_FIFTH_PI,
                     J1_FIRST_ZERO, simpson_acf)


def _laplacian_from_lam(lam: float) -> AoaDistribution:
    return AoaDistribution(AoaKind.MODIFIED_LAPLACIAN, lam=lam,
                           norm_c=-1.0 / math.expm1(-lam * math.pi))


# --- anchors -------------------------------------------------------------------

@pytest.mark.parametrize("dist", [make_uniform(), make_laplacian(0.0),
                                  make_laplacian(1.0)])
def test_zero_lag_anchor(dist):
    v = acf_value(dist, 0.0, tol=1e-9)
    assert v.r_i == pytest.approx(1.0, abs=2e-9)
    assert v.r_q == pytest.approx(0.0, abs=2e-9)


def test_tau_validation():
    d = make_uniform()
    for bad in (-0.1, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            acf_value(d, bad)
        with pytest.raises(ValueError):
            clarke_acf(bad)


# --- uniform case collapses to the closed form ----------------------------------

def test_uniform_inphase_vanishes_at_first_bessel_zero():
    val = acf_inphase(make_uniform(), CLARKE_TAU_MIN, tol=1e-10)
    assert abs(val) < 1e-9


@pytest.mark.parametrize("tau", [0.1, 0.5, 1.0])
def test_uniform_quadrature_component_vanishes(tau):
    # cos(phi) is symmetric about zero under the uniform density, so the
    # sine expectation cancels
    assert abs(acf_quadrature_comp(make_uniform(), tau, tol=1e-9)) < 1e-9


def test_uniform_matches_clarke_pointwise():
    tol = 1e-9
    d = make_uniform()
    for tau in np.arange(0.0, 3.01, 0.25):
        quad = acf_value(d, float(tau), tol)
        closed = clarke_acf(float(tau))
        assert quad.r_i == pytest.approx(closed.r_i, abs=10 * tol)
        assert abs(quad.r_q) <= 10 * tol


def test_uniform_small_lag_value():
    v = acf_value(make_uniform(), 0.1, tol=1e-10)
    assert v.r_i == pytest.approx(J0_AT_FIFTH_PI, abs=1e-9)


# --- concentrated density limit --------------------------------------------------

def test_near_delta_quadrature_component():
    # density collapsing at phi=0 turns r_Q into sin(2*pi*tau')
    d = _laplacian_from_lam(1e3)
    assert acf_quadrature_comp(d, 0.25, tol=1e-10) == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("tau", [0.3, 0.9, 1.6])
def test_near_delta_modulus_is_one(tau):
    d = _laplacian_from_lam(1e3)
    assert acf_value(d, tau, tol=1e-10).modulus == pytest.approx(1.0, abs=1e-3)


# --- independent-oracle spot values ----------------------------------------------

@pytest.mark.parametrize("sigma,tau", [(0.1, 0.3), (0.2, 0.7), (1.0, 0.2),
                                       (1.0, 1.5)])
def test_components_match_dense_simpson(sigma, tau):
    d = make_laplacian(sigma)
    ref = simpson_acf(d.lam, tau)
    assert acf_inphase(d, tau, tol=1e-10) == pytest.approx(ref.real, abs=1e-9)
    assert acf_quadrature_comp(d, tau, tol=1e-10) == pytest.approx(ref.imag, abs=1e-9)


# --- modulus bound ---------------------------------------------------------------

def test_modulus_bounded_by_one():
    grid = default_tau_grid(0.0, 2.0, 0.05)
    for sigma in (0.0, 0.1, 1.0):
        curve = acf_curve(make_laplacian(sigma), grid, tol=1e-9)
        assert np.all(curve.modulus <= 1.0 + 1e-9)


# --- clarke closed form -----------------------------------------------------------

def test_clarke_values():
    assert clarke_acf(0.0) == AcfValue(1.0, 0.0)
    assert abs(clarke_acf(CLARKE_TAU_MIN).r_i) < 1e-6
    v = clarke_acf(J1_FIRST_ZERO / (2.0 * math.pi))
    assert v.r_i == pytest.approx(-CLARKE_VAL_MAX, abs=1e-10)
    assert v.r_q == 0.0


# --- curves ---------------------------------------------------------------------

def test_curve_single_point():
    c = acf_curve(make_laplacian(0.5), [0.0])
    assert len(c) == 1
    assert c.values()[0].r_i == pytest.approx(1.0, abs=2e-9)
    assert c.values()[0].r_q == pytest.approx(0.0, abs=2e-9)


def test_curve_validation():
    with pytest.raises(ValueError):
        AcfCurve("x", np.array([0.0, 0.0]), np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        AcfCurve("x", np.array([0.0, 1.0]), np.zeros(3), np.zeros(2))
    with pytest.raises(ValueError):
        AcfCurve("x", np.array([]), np.array([]), np.array([]))
    with pytest.raises(TypeError):
        acf_curve("clarke", [0.0, 1.0])


def test_curve_is_deterministic():
    grid = default_tau_grid(0.0, 1.0, 0.1)
    a = acf_curve(make_laplacian(0.2), grid)
    b = acf_curve(make_laplacian(0.2), grid)
    assert np.array_equal(a.r_i, b.r_i) and np.array_equal(a.r_q, b.r_q)


def test_default_grid_shape():
    g = default_tau_grid()
    assert len(g) == 401
    assert g[0] == 0.0
    assert g[-1] == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(ValueError):
        default_tau_grid(0.0, 1.0, -0.1)


def test_uniform_curve_tracks_clarke():
    grid = default_tau_grid(0.0, 2.0, 0.1)
    tol = 1e-9
    uni = acf_curve(make_uniform(), grid, tol)
    clk = acf_curve(CLARKE, grid)
    assert np.max(np.abs(uni.r_i - clk.r_i)) <= 10 * tol
    assert np.max(np.abs(uni.r_q)) <= tol


def test_larger_delay_spread_decorrelates_at_its_first_minimum():
    # fine-grid comparison at the higher-spread curve's first-minimum lag
    grid = default_tau_grid(0.0, 1.0, 0.002)
    lo = acf_curve(make_laplacian(0.1), grid, tol=1e-9)
    hi = acf_curve(make_laplacian(1.0), grid, tol=1e-9)
    k = int(np.argmin(hi.modulus[1:])) + 1
    assert hi.modulus[k] <= lo.modulus[k]


def test_decreasing_concentration_converges_to_clarke():
    grid = default_tau_grid(0.0, 2.0, 0.02)
    clarke_mod = np.abs(acf_curve(CLARKE, grid).r_i)
    dists = []
    for sigma in (0.1, 0.2, 1.0):
        c = acf_curve(make_laplacian(sigma), grid, tol=1e-9)
        dists.append(np.max(np.abs(c.modulus - clarke_mod)))
    assert dists[0] > dists[1] > dists[2]


def test_halving_tol_changes_nothing_material():
    grid = default_tau_grid(0.0, 2.0, 0.1)
    d = make_laplacian(0.1)
    a = acf_curve(d, grid, tol=1e-9)
    b = acf_curve(d, grid, tol=5e-10)
    assert np.max(np.abs(a.r_i - b.r_i)) <= 1e-9
    assert np.max(np.abs(a.r_q - b.r_q)) <= 1e-9
