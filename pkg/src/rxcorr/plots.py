"""Figure rendering for the CLI report path.

Line plots are written next to the delimited output as SVG files.  Output is
kept byte-reproducible: a fixed hash salt stabilizes matplotlib's generated
element ids and the creation date is stripped from the metadata.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["line_plot", "curve_figures", "sweep_figures", "compare_figure",
           "estimate_figure"]

_TAU_LABEL = r"normalized lag $\tau' = f_D\,\tau$"
_SIGMA_LABEL = r"rms delay spread $\sigma_\tau$ [$\mu$s]"


def line_plot(path, series, xlabel: str, ylabel: str, title: str ,
              marker: str | None = None) -> Path:
    """Overlay plot of (label, x, y) series, saved to `path`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": "rxcorr",
                                "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(7.0, 4.5))
        for label, x, y in series:
            ax.plot(x, y, label=label, marker=marker, linewidth=1.4)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        ax.grid(alpha=0.3)
        ax.legend()
        fig.tight_layout()
        metadata = {"Date": None} if path.suffix == ".svg" else None
        fig.savefig(path, metadata=metadata)
        plt.close(fig)
    return path


def curve_figures(stem: Path, curves) -> list[Path]:
    """Three overlays per curve set: in-phase, quadrature, modulus."""
    stem = Path(stem)
    panels = [
        ("inphase", r"$r_I(\tau')$", lambda c: c.r_i),
        ("quadrature", r"$r_Q(\tau')$", lambda c: c.r_q),
        ("modulus", r"$|r(\tau')|$", lambda c: c.modulus),
    ]
    paths = []
    for name, ylabel, pick in panels:
        series = [(c.label, c.grid, pick(c)) for c in curves]
        paths.append(line_plot(
            stem.with_name(stem.name + f"_{name}.svg"), series,
            _TAU_LABEL, ylabel, f"{ylabel} per environment"))
    return paths


def sweep_figures(stem: Path, sigmas, reports) -> list[Path]:
    """Extrema values and recovery height versus delay spread."""
    stem = Path(stem)
    ok = [(s, r) for s, r in zip(sigmas, reports) if r is not None]
    xs = [s for s, _ in ok]
    paths = [
        line_plot(stem.with_name(stem.name + "_extrema.svg"),
                  [("first local min", xs, [r.val_min for _, r in ok]),
                   ("first local max", xs, [r.val_max for _, r in ok])],
                  _SIGMA_LABEL, r"$|r(\tau')|$ at extremum",
                  "First extrema of the correlation modulus", marker="o"),
        line_plot(stem.with_name(stem.name + "_delta_r.svg"),
                  [("max - min recovery", xs, [r.delta_r for _, r in ok])],
                  _SIGMA_LABEL, r"$\Delta r(\sigma_\tau)$",
                  "Recovery height between first extrema", marker="o"),
    ]
    return paths


def estimate_figure(stem: Path, labeled_series) -> Path:
    """Estimated modulus per series: (label, grid, modulus)."""
    stem = Path(stem)
    return line_plot(stem.with_name(stem.name + "_estimate.svg"),
                     labeled_series, _TAU_LABEL, r"$|\hat r(\tau')|$",
                     "Monte Carlo correlation estimate")


def compare_figure(stem: Path, labeled_series) -> Path:
    """Analytic vs estimated in-phase component per series."""
    stem = Path(stem)
    return line_plot(stem.with_name(stem.name + "_compare.svg"),
                     labeled_series, _TAU_LABEL, r"$r_I(\tau')$",
                     "Analytic vs Monte Carlo")
