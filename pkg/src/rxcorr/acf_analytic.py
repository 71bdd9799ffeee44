"""Analytic normalized autocorrelation of the received signal.

For a carrier received through many paths while the receiver moves, the
normalized lag correlation is the characteristic-function expectation

    r(tau') = E{ exp(2*pi*i * tau' * cos(phi)) },      tau' = f_D * tau,

taken over the arrival azimuth phi.  Everything here works in the
dimensionless lag tau' (physical lag times maximum Doppler shift), so no
speed or carrier choice is needed.  The in-phase and quadrature parts are
the cosine and sine expectations, evaluated by adaptive quadrature against
the angle model; the isotropic case collapses to the closed form J0(2*pi*tau')
and is kept as an independent baseline.

Both expectation kernels are even in phi (cos(phi) is even and the densities
depend on |phi| only), so integration runs over [0, pi] and doubles — an
identity the test suite checks against full-interval integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .angle_model import AoaDistribution, pdf
from .bessel import bessel_j0
from .quadrature import QuadratureError, integrate_even_interval

__all__ = [
    "AcfValue", "AcfCurve", "CLARKE", "ClarkeBaseline",
    "acf_inphase", "acf_quadrature_comp", "acf_value", "clarke_acf",
    "acf_curve", "default_tau_grid", "DEFAULT_TOL", "MODULUS_SLACK",
]

DEFAULT_TOL = 1e-9
# |E{exp(i*theta)}| <= 1; anything above 1 + slack flags a quadrature bug.
MODULUS_SLACK = 1e-9


class ClarkeBaseline:
    """Marker selecting the closed-form isotropic baseline J0(2*pi*tau')."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "CLARKE"


CLARKE = ClarkeBaseline()


class AcfValue(NamedTuple):
    """One complex correlation sample, split into components."""

    r_i: float
    r_q: float

    @property
    def modulus(self) -> float:
        return math.hypot(self.r_i, self.r_q)


def _check_tau(tau_prime: float) -> float:
    t = float(tau_prime)
    if not math.isfinite(t) or t < 0.0:
        raise ValueError(f"tau_prime must be finite and >= 0, got {tau_prime!r}")
    return t


def _panel_budget(tau_prime: float) -> tuple[int, int]:
    # The kernels oscillate ~2*tau' times across the interval, so both the
    # initial split and the panel budget grow with ceil(tau').
    waves = int(math.ceil(tau_prime))
    return 1 + waves, 256 + 128 * waves


def acf_inphase(dist: AoaDistribution, tau_prime: float,
                tol: float = DEFAULT_TOL) -> float:
    """In-phase correlation component E{cos(2*pi*tau'*cos(phi))}."""
    t = _check_tau(tau_prime)
    omega = 2.0 * math.pi * t
    min_iv, limit = _panel_budget(t)
    return integrate_even_interval(
        lambda phi: np.cos(omega * np.cos(phi)) * pdf(dist, phi),
        half_width=math.pi, tol=tol, even=True,
        limit=limit, min_intervals=min_iv)


def acf_quadrature_comp(dist: AoaDistribution, tau_prime: float,
                        tol: float = DEFAULT_TOL) -> float:
    """Quadrature correlation component E{sin(2*pi*tau'*cos(phi))}."""
    t = _check_tau(tau_prime)
    omega = 2.0 * math.pi * t
    min_iv, limit = _panel_budget(t)
    return integrate_even_interval(
        lambda phi: np.sin(omega * np.cos(phi)) * pdf(dist, phi),
        half_width=math.pi, tol=tol, even=True,
        limit=limit, min_intervals=min_iv)


def acf_value(dist: AoaDistribution, tau_prime: float,
              tol: float = DEFAULT_TOL) -> AcfValue:
    """Complex normalized correlation at lag tau' under dist."""
    value = AcfValue(acf_inphase(dist, tau_prime, tol),
                     acf_quadrature_comp(dist, tau_prime, tol))
    if value.modulus > 1.0 + MODULUS_SLACK:
        raise QuadratureError(
            f"correlation modulus {value.modulus!r} exceeds 1 at tau'={tau_prime!r}")
    return value


def clarke_acf(tau_prime: float) -> AcfValue:
    """Closed-form isotropic baseline: (J0(2*pi*tau'), 0)."""
    t = _check_tau(tau_prime)
    return AcfValue(bessel_j0(2.0 * math.pi * t), 0.0)


@dataclass(frozen=True)
class AcfCurve:
    """Correlation samples over a strictly increasing tau' grid."""

    label: str
    grid: np.ndarray
    r_i: np.ndarray
    r_q: np.ndarray
    sigma_tau: float | None = None

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        r_i = np.asarray(self.r_i, dtype=float)
        r_q = np.asarray(self.r_q, dtype=float)
        if grid.size == 0:
            raise ValueError("curve grid is empty")
        if np.any(np.diff(grid) <= 0.0):
            raise ValueError("curve grid must be strictly increasing")
        if not (len(grid) == len(r_i) == len(r_q)):
            raise ValueError("grid and component lengths differ")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "r_i", r_i)
        object.__setattr__(self, "r_q", r_q)

    @property
    def modulus(self) -> np.ndarray:
        return np.hypot(self.r_i, self.r_q)

    def values(self) -> list[AcfValue]:
        return [AcfValue(float(i), float(q)) for i, q in zip(self.r_i, self.r_q)]

    def __len__(self) -> int:
        return len(self.grid)


def default_tau_grid(start: float = 0.0, stop: float = 2.0,
                     step: float = 0.005) -> np.ndarray:
    """Default lag grid; [0, 2] covers the first extrema for all delay spreads
    of practical interest."""
    if step <= 0.0 or stop <= start or start < 0.0:
        raise ValueError(f"bad grid spec start={start} stop={stop} step={step}")
    n = int(round((stop - start) / step)) + 1
    return start + step * np.arange(n)


def acf_curve(model, grid, tol: float = DEFAULT_TOL,
              label: str | None = None,
              sigma_tau: float | None = None) -> AcfCurve:
    """Pointwise correlation over a lag grid.

    `model` is an AoaDistribution (quadrature path) or CLARKE (closed form).
    Grid points are independent, so evaluation order cannot matter.
    """
    grid = np.asarray(grid, dtype=float)
    if isinstance(model, ClarkeBaseline):
        vals = [clarke_acf(t) for t in grid]
        label = label or "clarke"
    elif isinstance(model, AoaDistribution):
        vals = [acf_value(model, t, tol) for t in grid]
        if label is None:
            label = ("uniform" if model.lam is None
                     else f"lam={model.lam:g}")
    else:
        raise TypeError(f"model must be AoaDistribution or CLARKE, got {model!r}")
    return AcfCurve(label=label,
                    grid=grid,
                    r_i=np.array([v.r_i for v in vals]),
                    r_q=np.array([v.r_q for v in vals]),
                    sigma_tau=sigma_tau)
