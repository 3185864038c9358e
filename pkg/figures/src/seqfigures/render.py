"""Rendering of exported series data to image files.

The primary package is consumed strictly through its command-line
interface: series come from CSVs it wrote, reference-line values are
parsed from ``greedysphere constants`` output at render time.  Nothing
numerical is recomputed here.
"""

from __future__ import annotations

import csv
import subprocess
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .specs import FigureSpec, PanelSpec  # noqa: E402

GREEDYSPHERE_CMD = [sys.executable, "-m", "greedysphere.cli"]

plt.rcParams.update(
    {
        "figure.dpi": 110,
        "savefig.dpi": 110,
        "font.size": 9,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "lines.markersize": 1.6,
        "svg.hashsalt": "seqfigures",
    }
)


class DataError(RuntimeError):
    """Missing or malformed input data."""


def fetch_constants(lam: float, gbar_bound: int = 1 << 18) -> dict[str, float]:
    """Limit constants for one exponent, parsed from the primary CLI."""
    res = subprocess.run(
        GREEDYSPHERE_CMD
        + ["constants", "--lambda", repr(lam), "--gbar-bound", str(gbar_bound)],
        capture_output=True,
        text=True,
    )
    if res.returncode != 0:
        raise DataError(f"constants call failed for lambda={lam}: {res.stderr.strip()}")
    out = {}
    for line in res.stdout.strip().splitlines():
        name, value = line.split()
        out[name] = float(value)
    return out


def prepare_data(spec: FigureSpec, data_dir: Path) -> None:
    """Produce any missing input CSVs by invoking the primary CLI."""
    data_dir.mkdir(parents=True, exist_ok=True)
    if spec.data_kind == "g-curve":
        target = data_dir / "g_curve.csv"
        if not target.exists():
            res = subprocess.run(
                GREEDYSPHERE_CMD + ["g-curve", "--out", str(target)],
                capture_output=True,
                text=True,
            )
            if res.returncode != 0:
                raise DataError(f"g-curve export failed: {res.stderr.strip()}")
        return
    for panel, name in zip(spec.panels, spec.csv_names()):
        target = data_dir / name
        if target.exists():
            continue
        res = subprocess.run(
            GREEDYSPHERE_CMD
            + [
                "second-order",
                "--lambda",
                repr(panel.lam),
                "--nmax",
                str(spec.n_max),
                "--out",
                str(target),
            ],
            capture_output=True,
            text=True,
        )
        if res.returncode != 0:
            raise DataError(
                f"second-order export failed for lambda={panel.lam}: {res.stderr.strip()}"
            )


def _read_csv(path: Path) -> dict[str, list[float]]:
    if not path.exists():
        raise DataError(f"input data file missing: {path}")
    with path.open() as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"input data file empty: {path}")
        columns: dict[str, list[float]] = {name: [] for name in reader.fieldnames}
        try:
            for row in reader:
                for name in reader.fieldnames:
                    columns[name].append(float(row[name]))
        except (TypeError, ValueError) as exc:
            raise DataError(f"malformed row in {path}: {exc}") from exc
    if not next(iter(columns.values()), []):
        raise DataError(f"no data rows in {path}")
    return columns


def _render_series_figure(spec: FigureSpec, data_dir: Path, out_path: Path) -> None:
    n_panels = len(spec.panels)
    ncols = 2 if n_panels > 1 else 1
    nrows = (n_panels + ncols - 1) // ncols
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(4.2 * ncols, 2.9 * nrows), squeeze=False
    )
    for i, (panel, name) in enumerate(zip(spec.panels, spec.csv_names())):
        ax = axes[i // ncols][i % ncols]
        data = _read_csv(data_dir / name)
        if spec.column not in data:
            raise DataError(f"column {spec.column!r} missing from {name}")
        ax.plot(data["N"], data[spec.column], ".", color="#1f77b4", rasterized=False)
        constants = fetch_constants(panel.lam)
        for key in panel.reference_keys:
            if key not in constants:
                raise DataError(f"constant {key!r} not reported for lambda={panel.lam}")
            ax.axhline(constants[key], color="#d62728", lw=0.9, label=key)
        for level in panel.guide_levels:
            ax.axhline(level, color="#555555", lw=0.7, ls="--")
        ax.set_title(f"lambda = {panel.lam:g}")
        ax.set_xlabel("N")
        ax.set_ylabel(spec.ylabel)
        if panel.reference_keys:
            ax.legend(loc="best", fontsize=7)
    for j in range(n_panels, nrows * ncols):
        axes[j // ncols][j % ncols].set_visible(False)
    fig.suptitle(spec.title, fontsize=10)
    fig.tight_layout(rect=(0, 0, 1, 0.97))
    fig.savefig(out_path)
    plt.close(fig)


def _render_g_curves(spec: FigureSpec, data_dir: Path, out_path: Path) -> None:
    data = _read_csv(data_dir / "g_curve.csv")
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    lam = data["lambda"]
    for name, series in data.items():
        if name == "lambda":
            continue
        ax.plot(lam, series, lw=1.2, label=name.replace("G_M", "generator "))
    ax.set_xlabel("lambda")
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.title, fontsize=10)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def render(spec: FigureSpec, data_dir: Path, out_path: Path) -> Path:
    """Render one figure family; returns the written path."""
    out_path.parent.mkdir(parents=True, exist_ok=True)
    if spec.data_kind == "g-curve":
        _render_g_curves(spec, data_dir, out_path)
    else:
        _render_series_figure(spec, data_dir, out_path)
    return out_path
