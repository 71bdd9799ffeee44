"""First local extrema of the correlation modulus, and delay-spread sweeps.

|r(tau')| starts at 1 and falls; where it first bottoms out and how far it
recovers bound the decorrelation achievable by delaying one receiver branch
against another.  This module walks the modulus on a coarse lag grid to
bracket the first local minimum and the following local maximum, refines the
brackets by golden-section search, and reports the recovery height
(first-max minus first-min) per delay spread.

A near-concentrated angle density keeps |r| pinned at 1 (variations below
any meaningful prominence), in which case there is nothing to find and an
explicit error is raised instead of a fabricated extremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .acf_analytic import (CLARKE, ClarkeBaseline, DEFAULT_TOL, acf_value,
                           clarke_acf)
from .angle_model import AoaDistribution, make_laplacian

__all__ = ["ExtremumNotFoundError", "ExtremaReport", "SweepResult",
           "find_first_extrema", "delta_r", "sweep_sigma"]

# Coarse-scan step in tau'; well under half the spacing of the baseline's
# extrema (~0.23), so a bracket cannot skip an oscillation.
COARSE_STEP = 0.002
DEFAULT_SEARCH_LIMIT = 2.0
DEFAULT_XTOL = 1e-7
# A dip/rise of |r| smaller than this is numerical noise, not an extremum.
MIN_PROMINENCE = 1e-6

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class ExtremumNotFoundError(RuntimeError):
    """No local extremum of |r| exists within the searched lag range."""


@dataclass(frozen=True)
class ExtremaReport:
    """First local minimum and subsequent local maximum of |r(tau')|."""

    tau_min: float
    val_min: float
    tau_max: float
    val_max: float

    def __post_init__(self):
        if not (0.0 < self.tau_min < self.tau_max):
            raise ValueError(
                f"need 0 < tau_min < tau_max, got {self.tau_min!r}, {self.tau_max!r}")
        if not (0.0 <= self.val_min <= self.val_max <= 1.0 + 1e-9):
            raise ValueError(
                f"need 0 <= val_min <= val_max <= 1, got {self.val_min!r}, {self.val_max!r}")

    @property
    def delta_r(self) -> float:
        return self.val_max - self.val_min


def delta_r(report: ExtremaReport) -> float:
    """Recovery height of |r| from its first minimum to the next maximum."""
    return report.delta_r


@dataclass(frozen=True)
class SweepResult:
    """Per-delay-spread extrema reports; failed points carry an error note."""

    sigma_taus: list[float]
    reports: list[ExtremaReport | None]
    errors: list[str | None]

    def __post_init__(self):
        if not (len(self.sigma_taus) == len(self.reports) == len(self.errors)):
            raise ValueError("sweep lists must have equal length")
        if any(b <= a for a, b in zip(self.sigma_taus, self.sigma_taus[1:])):
            raise ValueError("sigma_tau grid must be strictly increasing")

    def __len__(self) -> int:
        return len(self.sigma_taus)


def _modulus_fn(model, quad_tol: float):
    if isinstance(model, ClarkeBaseline):
        return lambda t: clarke_acf(t).modulus
    if isinstance(model, AoaDistribution):
        return lambda t: acf_value(model, t, quad_tol).modulus
    raise TypeError(f"model must be AoaDistribution or CLARKE, got {model!r}")


def _golden_refine(f, a: float, b: float, xtol: float, sign: float):
    """Golden-section search for the minimum of sign*f on [a, b].

    Returns the best evaluated point and its f value once the bracket is
    narrower than xtol.
    """
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = sign * f(c), sign * f(d)
    while (b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = sign * f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = sign * f(d)
    if fc < fd:
        return c, sign * fc
    return d, sign * fd


def find_first_extrema(model, search_limit: float = DEFAULT_SEARCH_LIMIT,
                       tol: float = DEFAULT_XTOL,
                       quad_tol: float = DEFAULT_TOL,
                       coarse_step: float = COARSE_STEP) -> ExtremaReport:
    """Locate the first local min and the following local max of |r(tau')|.

    Coarse scan with a prominence guard brackets each extremum (a slope sign
    change has to be confirmed by a rise/fall larger than numerical noise);
    golden-section search narrows each bracket below `tol` in tau'.
    Raises ExtremumNotFoundError when the modulus stays flat or the limit is
    too small to contain both extrema.
    """
    if search_limit <= 0.0 or coarse_step <= 0.0 or tol <= 0.0:
        raise ValueError("search_limit, coarse_step and tol must be positive")
    mod = _modulus_fn(model, quad_tol)

    n_steps = int(math.floor(search_limit / coarse_step))
    taus = [k * coarse_step for k in range(n_steps + 1)]
    vals = [mod(taus[0])]

    # Stage 1: descend from tau'=0 until the curve clearly turns back up.
    low_idx, low_val = 0, vals[0]
    min_bracket = None
    k = 0
    for k in range(1, n_steps + 1):
        v = mod(taus[k])
        vals.append(v)
        if v < low_val:
            low_idx, low_val = k, v
        elif v > low_val + MIN_PROMINENCE and low_idx > 0:
            min_bracket = (taus[low_idx - 1], taus[min(low_idx + 1, k)])
            break
    if min_bracket is None:
        raise ExtremumNotFoundError(
            f"no local minimum of |r| within tau' <= {search_limit} "
            "(modulus is flat or still decreasing)")

    # Stage 2: climb until the curve clearly turns back down.
    high_idx, high_val = k, vals[k]
    max_bracket = None
    for k in range(k + 1, n_steps + 1):
        v = mod(taus[k])
        vals.append(v)
        if v > high_val:
            high_idx, high_val = k, v
        elif v < high_val - MIN_PROMINENCE:
            max_bracket = (taus[high_idx - 1], taus[min(high_idx + 1, k)])
            break
    if max_bracket is None:
        raise ExtremumNotFoundError(
            f"no local maximum of |r| after the first minimum within "
            f"tau' <= {search_limit}")

    tau_min, val_min = _golden_refine(mod, *min_bracket, xtol=tol, sign=1.0)
    tau_max, val_max = _golden_refine(mod, *max_bracket, xtol=tol, sign=-1.0)
    return ExtremaReport(tau_min=tau_min, val_min=val_min,
                         tau_max=tau_max, val_max=val_max)


def sweep_sigma(sigma_grid, search_limit: float = DEFAULT_SEARCH_LIMIT,
                tol: float = DEFAULT_XTOL,
                quad_tol: float = DEFAULT_TOL) -> SweepResult:
    """Extrema reports over a strictly increasing delay-spread grid (us).

    Per-point failures are recorded and the sweep continues; an empty grid
    yields an empty result.
    """
    sigmas = [float(s) for s in sigma_grid]
    reports: list[ExtremaReport | None] = []
    errors: list[str | None] = []
    for sigma in sigmas:
        try:
            reports.append(find_first_extrema(
                make_laplacian(sigma), search_limit=search_limit,
                tol=tol, quad_tol=quad_tol))
            errors.append(None)
        except ExtremumNotFoundError as exc:
            reports.append(None)
            errors.append(str(exc))
    return SweepResult(sigma_taus=sigmas, reports=reports, errors=errors)
