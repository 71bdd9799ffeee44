"""In-repo J0 against an independent high-precision evaluation."""

import numpy as np
import pytest

from rxcorr.bessel import bessel_j0

from oracles import (CLARKE_VAL_MAX, J0_FIRST_ZERO, J1_FIRST_ZERO,
                     j0_reference)


def test_value_at_origin():
    assert bessel_j0(0.0) == 1.0


def test_dense_grid_against_mpmath():
    pytest.importorskip("mpmath")
    # covers 2*pi*tau' for tau' up to ~6, plus the series/asymptotic seam
    x = np.concatenate([np.arange(0.0, 40.0, 0.01),
                        np.array([11.999, 12.0, 12.001])])
    err = np.abs(bessel_j0(x) - j0_reference(x))
    assert err.max() < 1e-10


def test_first_zero_and_extremum():
    assert abs(bessel_j0(J0_FIRST_ZERO)) < 1e-12
    assert bessel_j0(J1_FIRST_ZERO) == pytest.approx(-CLARKE_VAL_MAX, abs=1e-12)


def test_even_in_argument():
    x = np.linspace(0.1, 30.0, 57)
    assert np.array_equal(bessel_j0(x), bessel_j0(-x))


def test_scalar_and_array_agree():
    x = np.array([0.3, 5.0, 20.0])
    arr = bessel_j0(x)
    for xi, yi in zip(x, arr):
        assert bessel_j0(float(xi)) == yi
