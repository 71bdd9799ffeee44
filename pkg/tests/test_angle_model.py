"""Arrival-angle model: fit formula, normalization, symmetry, sampling."""

import math

import numpy as np
import pytest

from rxcorr.angle_model import (AoaDistribution, AoaKind, DelaySpread, cdf,
                                lambda_from_delay_spread,
                                laplacian_magnitude_quantile, make_laplacian,
                                make_uniform, pdf, sample_aoa)
from rxcorr.quadrature import integrate_even_interval

from oracles import (LAMBDA_AT_0P1, LAMBDA_AT_1P0, NORM_C_AT_LAM_2P5,
                     NORM_C_AT_SIGMA_1, laplacian_cdf)


# --- delay spread and the fit ------------------------------------------------

def test_delay_spread_rejects_bad_values():
    for bad in (-0.1, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            DelaySpread(bad)
    with pytest.raises(ValueError):
        lambda_from_delay_spread(-1.0)


def test_lambda_spot_values():
    assert lambda_from_delay_spread(0.0) == 2.5
    assert lambda_from_delay_spread(0.1) == pytest.approx(LAMBDA_AT_0P1, abs=1e-12)
    assert lambda_from_delay_spread(1.0) == pytest.approx(LAMBDA_AT_1P0, abs=1e-12)
    assert lambda_from_delay_spread(DelaySpread(0.1)) == pytest.approx(
        LAMBDA_AT_0P1, abs=1e-12)


def test_lambda_monotone_decreasing_and_bounded():
    rng = np.random.default_rng(2024)
    sigmas = np.sort(rng.uniform(0.0, 10.0, size=200))
    lams = np.array([lambda_from_delay_spread(s) for s in sigmas])
    assert np.all(np.diff(lams) < 0.0)
    assert np.all(lams <= 2.5)


# --- distribution construction ----------------------------------------------

def test_make_laplacian_norm_constant():
    d0 = make_laplacian(0.0)
    assert d0.lam == 2.5
    assert d0.norm_c == pytest.approx(NORM_C_AT_LAM_2P5, abs=1e-12)
    d1 = make_laplacian(1.0)
    assert d1.norm_c == pytest.approx(NORM_C_AT_SIGMA_1, rel=1e-12)


@pytest.mark.parametrize("sigma", [0.0, 0.2, 1.0, 5.0])
def test_norm_constant_identity(sigma):
    d = make_laplacian(sigma)
    assert d.norm_c * (1.0 - math.exp(-d.lam * math.pi)) == pytest.approx(
        1.0, abs=1e-12)


def test_distribution_invariants_enforced():
    with pytest.raises(ValueError):
        AoaDistribution(AoaKind.MODIFIED_LAPLACIAN, lam=-1.0, norm_c=1.0)
    with pytest.raises(ValueError):
        AoaDistribution(AoaKind.MODIFIED_LAPLACIAN, lam=1.0, norm_c=1.0)
    with pytest.raises(ValueError):
        AoaDistribution(AoaKind.UNIFORM, lam=1.0, norm_c=None)
    with pytest.raises(ValueError):
        AoaDistribution(AoaKind.MODIFIED_LAPLACIAN, lam=1.0, norm_c=None)


# --- density -----------------------------------------------------------------

def test_uniform_pdf_value():
    d = make_uniform()
    for phi in (-math.pi, -1.0, 0.0, 2.5, math.pi):
        assert pdf(d, phi) == pytest.approx(1.0 / (2.0 * math.pi), abs=1e-15)


def test_laplacian_pdf_peak_and_symmetry():
    d = make_laplacian(0.0)
    assert pdf(d, 0.0) == pytest.approx(d.norm_c * d.lam / 2.0, abs=1e-15)
    # even symmetry is bit-exact for identical |phi|
    phis = np.linspace(0.0, math.pi, 101)
    assert np.array_equal(pdf(d, phis), pdf(d, -phis))
    assert pdf(d, math.pi) == pdf(d, -math.pi)


def test_pdf_outside_support_is_an_error():
    d = make_laplacian(0.5)
    for phi in (math.pi + 1e-6, -4.0, float("nan")):
        with pytest.raises(ValueError):
            pdf(d, phi)
    with pytest.raises(ValueError):
        pdf(d, np.array([0.0, 3.5]))


@pytest.mark.parametrize("dist", [make_uniform(), make_laplacian(0.0),
                                  make_laplacian(0.1), make_laplacian(1.0),
                                  make_laplacian(5.0)])
def test_pdf_integrates_to_one(dist):
    total = integrate_even_interval(lambda p: pdf(dist, p), tol=1e-12)
    assert total == pytest.approx(1.0, abs=1e-10)


def test_small_concentration_approaches_uniform():
    lam = 1e-4
    d = AoaDistribution(AoaKind.MODIFIED_LAPLACIAN, lam=lam,
                        norm_c=-1.0 / math.expm1(-lam * math.pi))
    phis = np.linspace(-math.pi, math.pi, 2001)
    dev = np.abs(pdf(d, phis) - 1.0 / (2.0 * math.pi))
    assert dev.max() < 1e-3


# --- cdf and quantile ----------------------------------------------------------

def test_cdf_matches_analytic_form():
    d = make_laplacian(0.3)
    phis = np.linspace(-math.pi, math.pi, 401)
    assert np.allclose(cdf(d, phis), laplacian_cdf(d.lam, phis), atol=1e-14)
    assert cdf(d, -math.pi) == pytest.approx(0.0, abs=1e-15)
    assert cdf(d, math.pi) == pytest.approx(1.0, abs=1e-15)
    assert cdf(make_uniform(), 0.0) == pytest.approx(0.5, abs=1e-15)


def test_magnitude_quantile_endpoints():
    assert laplacian_magnitude_quantile(2.5, 0.0) == 0.0
    # u -> 1 pushes the magnitude to the truncation edge
    assert laplacian_magnitude_quantile(2.5, 1.0 - 1e-12) == pytest.approx(
        math.pi, abs=1e-8)
    assert laplacian_magnitude_quantile(2.5, 1.0) == pytest.approx(math.pi, abs=0.0)


# --- sampling ------------------------------------------------------------------

def test_sampler_support_and_determinism():
    for dist in (make_uniform(), make_laplacian(0.2)):
        a = sample_aoa(dist, np.random.Generator(np.random.Philox(11)), 5000)
        b = sample_aoa(dist, np.random.Generator(np.random.Philox(11)), 5000)
        assert np.array_equal(a, b)
        assert np.all(np.abs(a) <= math.pi)


def test_sampler_ks_against_analytic_cdf():
    # KS bound for n = 1e6 at ~95% confidence is 1.36/sqrt(n) ~ 0.00136
    d = make_laplacian(0.0)  # lam = 2.5
    rng = np.random.Generator(np.random.Philox(99))
    samples = np.sort(sample_aoa(d, rng, 1_000_000))
    n = len(samples)
    theo = laplacian_cdf(d.lam, samples)
    empir_hi = np.arange(1, n + 1) / n
    empir_lo = np.arange(0, n) / n
    ks = max(np.max(np.abs(empir_hi - theo)), np.max(np.abs(theo - empir_lo)))
    assert ks < 0.002


def test_uniform_sampler_moments():
    rng = np.random.Generator(np.random.Philox(5))
    s = sample_aoa(make_uniform(), rng, 200_000)
    assert abs(np.mean(s)) < 0.02
    assert np.var(s) == pytest.approx(math.pi ** 2 / 3.0, rel=0.02)
