"""Command-line front end.

Subcommands:
    curve     analytic correlation components over a lag grid, per environment
    extrema   first local min/max of the correlation modulus
    sweep     extrema and recovery height across a delay-spread grid
    simulate  Monte Carlo correlation estimates with standard errors
    compare   analytic vs Monte Carlo consistency check (z-scores)

Results go to one CSV or JSON file; `--plot` adds SVG figures next to it.
Flags override an optional JSON config file, and the effective configuration
is echoed into every output header, so a rerun of the same invocation
produces byte-identical files.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 validation
failure (compare found the two routes inconsistent).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .acf_analytic import CLARKE, acf_curve
from .acf_estimator import AmplitudeModel, EnsembleConfig, estimate_curve
from .angle_model import make_laplacian, make_uniform
from .extrema_analysis import (ExtremumNotFoundError, find_first_extrema,
                               sweep_sigma)
from .output import write_csv, write_json
from .quadrature import QuadratureError
from . import plots

__all__ = ["main", "console_main", "RunConfig", "UsageError",
           "run_curve", "run_extrema", "run_sweep", "run_simulate",
           "run_compare"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VALIDATION = 3

Z_THRESHOLD = 4.0
# When the standard error is exactly zero (degenerate lag 0), agreement up to
# quadrature tolerance counts as a zero z-score.
_ZERO_SE_ATOL = 1e-8

_COMMON_DEFAULTS = {
    "sigma": [0.1, 0.2, 1.0],
    "grid": "0:2:0.005",
    "tol": 1e-9,
    "seed": 1729,
    "paths": 64,
    "realizations": 100_000,
    "amplitudes": "unit",
    "format": "csv",
    "plot": False,
    "doppler_hz": None,
    "search_limit": 2.0,
    "uniform": False,
    "clarke": False,
}
# Monte Carlo commands default to a coarser lag grid.
_GRID_DEFAULTS = {"simulate": "0:2:0.1", "compare": "0:2:0.1"}

_AMPLITUDES = {"unit": AmplitudeModel.UNIT_EQUAL,
               "rayleigh": AmplitudeModel.RAYLEIGH_IID}


class UsageError(Exception):
    """Bad flags, bad config file, or an impossible request."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise UsageError(message)


def _parse_sigma(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        vals = [float(v) for v in text]
    else:
        text = text.strip()
        if text in ("", "none"):
            return []
        try:
            vals = [float(tok) for tok in text.split(",") if tok.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --sigma list {text!r}: {exc}") from None
    for v in vals:
        if not math.isfinite(v) or v < 0.0:
            raise UsageError(f"sigma values must be finite and >= 0, got {v!r}")
    return sorted(set(vals))


def _parse_grid(spec: str) -> tuple[float, float, float]:
    try:
        start, stop, step = (float(tok) for tok in str(spec).split(":"))
    except ValueError:
        raise UsageError(f"bad --grid {spec!r}, expected start:stop:step") from None
    if start < 0.0 or step <= 0.0 or stop <= start:
        raise UsageError(f"bad --grid {spec!r}: need start >= 0, step > 0, stop > start")
    return start, stop, step


def _grid_array(spec: tuple[float, float, float]) -> np.ndarray:
    start, stop, step = spec
    n = int(round((stop - start) / step)) + 1
    return start + step * np.arange(n)


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration of one CLI invocation."""

    command: str
    sigma_taus: tuple[float, ...]
    grid: tuple[float, float, float]
    tol: float
    seed: int
    paths: int
    realizations: int
    amplitudes: str
    include_uniform: bool
    include_clarke: bool
    search_limit: float
    out: Path
    fmt: str
    plot: bool
    doppler_hz: float | None

    @property
    def ensemble(self) -> EnsembleConfig:
        return EnsembleConfig(n_paths=self.paths,
                              n_realizations=self.realizations,
                              amplitude_model=_AMPLITUDES[self.amplitudes],
                              seed=self.seed)

    def grid_array(self) -> np.ndarray:
        return _grid_array(self.grid)

    def effective(self) -> dict:
        """Flat key/value view echoed into output headers."""
        start, stop, step = self.grid
        return {
            "command": self.command,
            "sigma": ",".join(f"{s:g}" for s in self.sigma_taus),
            "grid": f"{start:g}:{stop:g}:{step:g}",
            "tol": self.tol,
            "seed": self.seed,
            "paths": self.paths,
            "realizations": self.realizations,
            "amplitudes": self.amplitudes,
            "uniform": self.include_uniform,
            "clarke": self.include_clarke,
            "search_limit": self.search_limit,
            "out": str(self.out),
            "format": self.fmt,
            "plot": self.plot,
            "doppler_hz": self.doppler_hz,
        }


def _load_config_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    unknown = set(data) - set(_COMMON_DEFAULTS) - {"out"}
    if unknown:
        raise UsageError(f"unknown config file keys: {sorted(unknown)}")
    return data


def config_from_namespace(ns: argparse.Namespace) -> RunConfig:
    """Merge CLI flags over config-file values over defaults."""
    file_cfg = _load_config_file(ns.config) if ns.config else {}

    def pick(key, default):
        cli = getattr(ns, key, None)
        if cli is not None:
            return cli
        if key in file_cfg and file_cfg[key] is not None:
            return file_cfg[key]
        return default

    fmt = str(pick("format", _COMMON_DEFAULTS["format"])).lower()
    if fmt not in ("csv", "json"):
        raise UsageError(f"--format must be csv or json, got {fmt!r}")
    tol = float(pick("tol", _COMMON_DEFAULTS["tol"]))
    if tol <= 0.0:
        raise UsageError("--tol must be positive")
    paths = int(pick("paths", _COMMON_DEFAULTS["paths"]))
    realizations = int(pick("realizations", _COMMON_DEFAULTS["realizations"]))
    if paths < 1 or realizations < 1:
        raise UsageError("--paths and --realizations must be >= 1")
    amplitudes = str(pick("amplitudes", _COMMON_DEFAULTS["amplitudes"]))
    if amplitudes not in _AMPLITUDES:
        raise UsageError(f"--amplitudes must be one of {sorted(_AMPLITUDES)}")
    doppler = pick("doppler_hz", _COMMON_DEFAULTS["doppler_hz"])
    if doppler is not None:
        doppler = float(doppler)
        if not math.isfinite(doppler) or doppler <= 0.0:
            raise UsageError("--doppler-hz must be positive")
    search_limit = float(pick("search_limit", _COMMON_DEFAULTS["search_limit"]))
    if search_limit <= 0.0:
        raise UsageError("--search-limit must be positive")
    grid_default = _GRID_DEFAULTS.get(ns.command, _COMMON_DEFAULTS["grid"])
    out = pick("out", None)
    if out is None:
        out = f"{ns.command}.{fmt}"
    return RunConfig(
        command=ns.command,
        sigma_taus=tuple(_parse_sigma(pick("sigma", _COMMON_DEFAULTS["sigma"]))),
        grid=_parse_grid(pick("grid", grid_default)),
        tol=tol,
        seed=int(pick("seed", _COMMON_DEFAULTS["seed"])),
        paths=paths,
        realizations=realizations,
        amplitudes=amplitudes,
        include_uniform=bool(pick("uniform", _COMMON_DEFAULTS["uniform"])),
        include_clarke=bool(pick("clarke", _COMMON_DEFAULTS["clarke"])),
        search_limit=search_limit,
        out=Path(out),
        fmt=fmt,
        plot=bool(pick("plot", _COMMON_DEFAULTS["plot"])),
        doppler_hz=doppler,
    )


def _sigma_label(sigma: float) -> str:
    return f"sigma_tau={sigma:g}"


def _series_models(cfg: RunConfig):
    """(label, sigma_tau_or_None, distribution) for simulate/compare."""
    models = []
    if cfg.include_uniform:
        models.append(("uniform", None, make_uniform()))
    for sigma in cfg.sigma_taus:
        models.append((_sigma_label(sigma), sigma, make_laplacian(sigma)))
    if not models:
        raise UsageError("nothing to run: sigma list is empty and --uniform not set")
    return models


# ---------------------------------------------------------------------------
# curve


def run_curve(cfg: RunConfig) -> int:
    grid = cfg.grid_array()
    curves = [acf_curve(make_laplacian(s), grid, cfg.tol,
                        label=_sigma_label(s), sigma_tau=s)
              for s in cfg.sigma_taus]
    curves.append(acf_curve(CLARKE, grid))

    if cfg.fmt == "csv":
        columns = ["series", "tau_prime", "r_i", "r_q", "modulus"]
        rows = [[c.label, float(t), float(i), float(q), float(m)]
                for c in curves
                for t, i, q, m in zip(c.grid, c.r_i, c.r_q, c.modulus)]
        write_csv(cfg.out, columns, rows, config=cfg.effective())
    else:
        write_json(cfg.out, {
            "config": cfg.effective(),
            "series": [{
                "label": c.label,
                "sigma_tau": c.sigma_tau,
                "tau_prime": [float(v) for v in c.grid],
                "r_i": [float(v) for v in c.r_i],
                "r_q": [float(v) for v in c.r_q],
                "modulus": [float(v) for v in c.modulus],
            } for c in curves],
        })
    if cfg.plot:
        plots.curve_figures(cfg.out.with_suffix(""), curves)
    return EXIT_OK


# ---------------------------------------------------------------------------
# extrema / sweep


def _extrema_columns(cfg: RunConfig, with_model: bool) -> list[str]:
    cols = ["sigma_tau", "tau_min", "val_min", "tau_max", "val_max",
            "delta_r", "status"]
    if with_model:
        cols = ["model"] + cols
    if cfg.doppler_hz is not None:
        cols += ["tau_min_seconds", "tau_max_seconds"]
    return cols


def _extrema_row(cfg: RunConfig, sigma, report, error, model=None):
    if report is None:
        row = [sigma, None, None, None, None, None, "no-extremum"]
    else:
        row = [sigma, report.tau_min, report.val_min, report.tau_max,
               report.val_max, report.delta_r, "ok"]
    if model is not None:
        row = [model] + row
    if cfg.doppler_hz is not None:
        if report is None:
            row += [None, None]
        else:
            row += [report.tau_min / cfg.doppler_hz,
                    report.tau_max / cfg.doppler_hz]
    return row


def run_extrema(cfg: RunConfig) -> int:
    jobs = []
    if cfg.include_clarke:
        jobs.append(("clarke", None, CLARKE))
    for sigma in cfg.sigma_taus:
        jobs.append(("laplacian", sigma, make_laplacian(sigma)))
    if not jobs:
        raise UsageError("nothing to analyze: sigma list is empty and --clarke not set")

    rows = []
    records = []
    n_ok = 0
    for model_name, sigma, model in jobs:
        try:
            rep = find_first_extrema(model, search_limit=cfg.search_limit,
                                     quad_tol=cfg.tol)
            err = None
            n_ok += 1
        except ExtremumNotFoundError as exc:
            rep, err = None, str(exc)
        rows.append(_extrema_row(cfg, sigma, rep, err, model=model_name))
        records.append((model_name, sigma, rep, err))

    if cfg.fmt == "csv":
        write_csv(cfg.out, _extrema_columns(cfg, with_model=True), rows,
                  config=cfg.effective())
    else:
        write_json(cfg.out, {
            "config": cfg.effective(),
            "rows": [_record_obj(cfg, m, s, r, e) for m, s, r, e in records],
            "summary": {"n_ok": n_ok, "n_failed": len(records) - n_ok},
        })
    return EXIT_OK if n_ok else EXIT_NUMERICAL


def _record_obj(cfg: RunConfig, model, sigma, report, error) -> dict:
    obj = {"model": model, "sigma_tau": sigma}
    if report is None:
        obj.update(status="no-extremum", error=error)
    else:
        obj.update(status="ok", tau_min=report.tau_min, val_min=report.val_min,
                   tau_max=report.tau_max, val_max=report.val_max,
                   delta_r=report.delta_r)
        if cfg.doppler_hz is not None:
            obj["tau_min_seconds"] = report.tau_min / cfg.doppler_hz
            obj["tau_max_seconds"] = report.tau_max / cfg.doppler_hz
    return obj


def run_sweep(cfg: RunConfig) -> int:
    if not cfg.sigma_taus:
        raise UsageError("empty sweep: provide at least one sigma value")
    result = sweep_sigma(cfg.sigma_taus, search_limit=cfg.search_limit,
                         quad_tol=cfg.tol)
    n_ok = sum(r is not None for r in result.reports)

    rows = [_extrema_row(cfg, s, rep, err)
            for s, rep, err in zip(result.sigma_taus, result.reports,
                                   result.errors)]
    if cfg.fmt == "csv":
        write_csv(cfg.out, _extrema_columns(cfg, with_model=False), rows,
                  config=cfg.effective())
    else:
        write_json(cfg.out, {
            "config": cfg.effective(),
            "rows": [_record_obj(cfg, "laplacian", s, r, e)
                     for s, r, e in zip(result.sigma_taus, result.reports,
                                        result.errors)],
            "summary": {"n_ok": n_ok, "n_failed": len(result) - n_ok},
        })
    if cfg.plot:
        plots.sweep_figures(cfg.out.with_suffix(""), result.sigma_taus,
                            result.reports)
    return EXIT_OK if n_ok else EXIT_NUMERICAL


# ---------------------------------------------------------------------------
# simulate / compare


def run_simulate(cfg: RunConfig) -> int:
    grid = cfg.grid_array()
    models = _series_models(cfg)
    series = []
    for idx, (label, sigma, dist) in enumerate(models):
        ecfg = EnsembleConfig(n_paths=cfg.paths,
                              n_realizations=cfg.realizations,
                              amplitude_model=_AMPLITUDES[cfg.amplitudes],
                              seed=cfg.seed + idx)
        series.append((label, sigma, estimate_curve(dist, grid, ecfg)))

    if cfg.fmt == "csv":
        columns = ["series", "tau_prime", "r_i", "r_q", "se_i", "se_q"]
        rows = [[label, float(t), e.r_i, e.r_q, e.se_i, e.se_q]
                for label, _, ests in series
                for t, e in zip(grid, ests)]
        write_csv(cfg.out, columns, rows, config=cfg.effective())
    else:
        write_json(cfg.out, {
            "config": cfg.effective(),
            "series": [{
                "label": label,
                "sigma_tau": sigma,
                "tau_prime": [float(t) for t in grid],
                "r_i": [e.r_i for e in ests],
                "r_q": [e.r_q for e in ests],
                "se_i": [e.se_i for e in ests],
                "se_q": [e.se_q for e in ests],
            } for label, sigma, ests in series],
        })
    if cfg.plot:
        plots.estimate_figure(
            cfg.out.with_suffix(""),
            [(label, grid, [e.modulus for e in ests])
             for label, _, ests in series])
    return EXIT_OK


def _z_score(analytic: float, estimate: float, se: float) -> float:
    if se > 0.0:
        return (estimate - analytic) / se
    return 0.0 if abs(estimate - analytic) <= _ZERO_SE_ATOL else math.inf


def run_compare(cfg: RunConfig, _corrupt: float = 0.0) -> int:
    """Analytic vs Monte Carlo per grid point; `_corrupt` offsets the
    analytic in-phase values and exists so tests can prove the harness
    detects inconsistency."""
    grid = cfg.grid_array()
    models = _series_models(cfg)
    rows = []
    json_rows = []
    max_abs_z = 0.0
    for idx, (label, sigma, dist) in enumerate(models):
        ecfg = EnsembleConfig(n_paths=cfg.paths,
                              n_realizations=cfg.realizations,
                              amplitude_model=_AMPLITUDES[cfg.amplitudes],
                              seed=cfg.seed + idx)
        curve = acf_curve(dist, grid, cfg.tol, label=label, sigma_tau=sigma)
        ests = estimate_curve(dist, grid, ecfg)
        for t, ai, aq, est in zip(grid, curve.r_i, curve.r_q, ests):
            ai = float(ai) + _corrupt
            aq = float(aq)
            z_i = _z_score(ai, est.r_i, est.se_i)
            z_q = _z_score(aq, est.r_q, est.se_q)
            max_abs_z = max(max_abs_z, abs(z_i), abs(z_q))
            rows.append([label, float(t), ai, aq, est.r_i, est.r_q,
                         est.se_i, est.se_q, z_i, z_q])
            json_rows.append({
                "series": label, "tau_prime": float(t),
                "analytic_r_i": ai, "analytic_r_q": aq,
                "estimate_r_i": est.r_i, "estimate_r_q": est.r_q,
                "se_i": est.se_i, "se_q": est.se_q,
                "z_i": z_i, "z_q": z_q,
            })

    passed = max_abs_z <= Z_THRESHOLD
    if cfg.fmt == "csv":
        columns = ["series", "tau_prime", "analytic_r_i", "analytic_r_q",
                   "estimate_r_i", "estimate_r_q", "se_i", "se_q",
                   "z_i", "z_q"]
        write_csv(cfg.out, columns, rows, config=cfg.effective(),
                  footer=[f"max_abs_z={max_abs_z!r}",
                          f"validation_passed={str(passed).lower()}"])
    else:
        write_json(cfg.out, {
            "config": cfg.effective(),
            "rows": json_rows,
            "summary": {"max_abs_z": max_abs_z,
                        "threshold": Z_THRESHOLD,
                        "validation_passed": passed},
        })
    if cfg.plot:
        by_series = {}
        for row in rows:
            by_series.setdefault(row[0], []).append((row[1], row[2], row[4]))
        series = []
        for label, pts in by_series.items():
            xs = [p[0] for p in pts]
            series.append((f"{label} analytic", xs, [p[1] for p in pts]))
            series.append((f"{label} estimate", xs, [p[2] for p in pts]))
        plots.compare_figure(cfg.out.with_suffix(""), series)
    return EXIT_OK if passed else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# entry points

_DISPATCH = {
    "curve": run_curve,
    "extrema": run_extrema,
    "sweep": run_sweep,
    "simulate": run_simulate,
    "compare": run_compare,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--sigma", help="comma-separated delay spreads in us "
                        "('none' for empty list)")
    common.add_argument("--grid", help="lag grid as start:stop:step")
    common.add_argument("--tol", type=float, help="quadrature tolerance")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--doppler-hz", dest="doppler_hz", type=float,
                        help="max Doppler shift for physical-delay columns")
    common.add_argument("--out", help="output file path")
    common.add_argument("--format", choices=("csv", "json"),
                        help="output format (default csv)")
    common.add_argument("--plot", action="store_true", default=None,
                        help="render SVG figures next to the output file")
    common.add_argument("--config", help="JSON config file; flags override it")

    mc = _Parser(add_help=False)
    mc.add_argument("--paths", type=int, help="propagation paths per realization")
    mc.add_argument("--realizations", type=int, help="ensemble realizations")
    mc.add_argument("--amplitudes", choices=sorted(_AMPLITUDES),
                    help="path amplitude law (default unit)")
    mc.add_argument("--uniform", action="store_true", default=None,
                    help="include the isotropic distribution as a series")

    search = _Parser(add_help=False)
    search.add_argument("--search-limit", dest="search_limit", type=float,
                        help="lag range scanned for extrema (default 2.0)")

    parser = _Parser(
        prog="rxcorr",
        description="Lag correlation of a moving receiver's signal under "
                    "delay-spread-adapted arrival-angle statistics.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("curve", parents=[common],
                   help="analytic correlation curves")
    pe = sub.add_parser("extrema", parents=[common, search],
                        help="first extrema of the correlation modulus")
    pe.add_argument("--clarke", action="store_true", default=None,
                    help="include the isotropic closed-form baseline")
    sub.add_parser("sweep", parents=[common, search],
                   help="extrema versus delay spread")
    sub.add_parser("simulate", parents=[common, mc],
                   help="Monte Carlo correlation estimates")
    sub.add_parser("compare", parents=[common, mc],
                   help="validate analytic curves against Monte Carlo")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = config_from_namespace(ns)
        return _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuadratureError, ExtremumNotFoundError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
