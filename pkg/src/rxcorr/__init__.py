"""Lag correlation of a mobile receiver's signal across environment types.

The received carrier's normalized autocorrelation over the dimensionless lag
tau' = f_D * tau is computed analytically (quadrature over an arrival-angle
density adapted to the environment's rms delay spread), cross-validated by a
sum-of-paths Monte Carlo estimator, and summarized by the first extrema of
the correlation modulus — the quantities that drive delay selection between
receiver branches.
"""

from .angle_model import (AoaDistribution, AoaKind, DelaySpread, cdf,
                          lambda_from_delay_spread, make_laplacian,
                          make_uniform, pdf, sample_aoa)
from .acf_analytic import (CLARKE, AcfCurve, AcfValue, acf_curve, acf_inphase,
                           acf_quadrature_comp, acf_value, clarke_acf,
                           default_tau_grid)
from .acf_estimator import (AcfEstimate, AmplitudeModel, EnsembleConfig,
                            estimate_acf, estimate_curve)
from .bessel import bessel_j0
from .extrema_analysis import (ExtremaReport, ExtremumNotFoundError,
                               SweepResult, delta_r, find_first_extrema,
                               sweep_sigma)
from .quadrature import QuadratureError, integrate_even_interval

__version__ = "0.1.0"

__all__ = [
    "AoaDistribution", "AoaKind", "DelaySpread", "cdf",
    "lambda_from_delay_spread", "make_laplacian", "make_uniform", "pdf",
    "sample_aoa",
    "CLARKE", "AcfCurve", "AcfValue", "acf_curve", "acf_inphase",
    "acf_quadrature_comp", "acf_value", "clarke_acf", "default_tau_grid",
    "AcfEstimate", "AmplitudeModel", "EnsembleConfig", "estimate_acf",
    "estimate_curve",
    "bessel_j0",
    "ExtremaReport", "ExtremumNotFoundError", "SweepResult", "delta_r",
    "find_first_extrema", "sweep_sigma",
    "QuadratureError", "integrate_even_interval",
    "__version__",
]
