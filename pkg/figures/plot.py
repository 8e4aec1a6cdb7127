#!/usr/bin/env python3
"""Regenerate figures from chemo-sap CSV outputs.

Reads only the published CSV schema (``scalars.csv`` and
``fields_t<t>.csv``); it never imports or invokes the solver.

Usage::

    python3 plot.py --kind <profiles|linf_series|rescaled_profile|spacetime> \
        --in <csv,...> --labels <l1,...> --out <png>

Kinds
-----
profiles
    Overlaid mean-density profiles (solid) with std bands (dashed), one
    fields CSV per curve.
linf_series
    Amplitude time series max|mean rho|(t), one scalars CSV per curve.
rescaled_profile
    eps * rho(eps * x) for stationary profiles; each label must contain
    ``eps=<value>``.
spacetime
    Heat map of mean rho over (x, t) from a set of fields CSVs; the time
    of each file is parsed from its ``fields_t<t>.csv`` name, falling
    back to the input order.

Rendering is deterministic: Agg backend, fixed figure size, dpi, and
fonts, no timestamps.  Re-running on unchanged CSVs yields byte-identical
images.  Exit codes: 0 success, 2 bad arguments or CSV schema mismatch.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIGSIZE = (6.4, 4.0)
DPI = 120

KINDS = ("profiles", "linf_series", "rescaled_profile", "spacetime")

_EPS_RE = re.compile(r"eps\s*=\s*([0-9.eE+-]+)")
_TIME_RE = re.compile(r"fields_t([0-9.]+)\.csv$")


class SchemaError(Exception):
    """A CSV is missing a column the requested figure kind needs."""


def read_csv_columns(path: Path) -> dict[str, np.ndarray]:
    """Read a CSV into a column dict; header-only files give empty arrays."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration as exc:
            raise SchemaError(f"{path}: empty file, no header") from exc
        rows = [[float(v) for v in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


def require(cols: dict[str, np.ndarray], names: list[str], path: Path) -> None:
    for name in names:
        if name not in cols:
            raise SchemaError(f"{path}: missing column {name!r}")


def _new_axes(xlabel: str, ylabel: str):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    return fig, ax


def plot_profiles(paths: list[Path], labels: list[str], out: Path) -> None:
    fig, ax = _new_axes("x", "density")
    drew = False
    for path, label in zip(paths, labels):
        cols = read_csv_columns(path)
        require(cols, ["x", "mean_rho", "std_rho"], path)
        if cols["x"].size == 0:
            continue
        line, = ax.plot(cols["x"], cols["mean_rho"], label=f"{label} mean")
        ax.plot(cols["x"], cols["std_rho"], linestyle="--",
                color=line.get_color(), label=f"{label} std")
        drew = True
    if drew:
        ax.legend(fontsize=8)
    fig.savefig(out)
    plt.close(fig)


def plot_linf_series(paths: list[Path], labels: list[str], out: Path) -> None:
    fig, ax = _new_axes("t", "max |mean rho|")
    drew = False
    for path, label in zip(paths, labels):
        cols = read_csv_columns(path)
        require(cols, ["t", "linf_mean_rho"], path)
        if cols["t"].size == 0:
            continue
        ax.plot(cols["t"], cols["linf_mean_rho"], label=label)
        drew = True
    if drew:
        ax.legend(fontsize=8)
    fig.savefig(out)
    plt.close(fig)


def plot_rescaled(paths: list[Path], labels: list[str], out: Path) -> None:
    fig, ax = _new_axes("eps x", "eps rho")
    drew = False
    for path, label in zip(paths, labels):
        m = _EPS_RE.search(label)
        if not m:
            raise SchemaError(f"label {label!r} must contain eps=<value> "
                              f"for the rescaled kind")
        eps = float(m.group(1))
        cols = read_csv_columns(path)
        require(cols, ["x", "mean_rho"], path)
        if cols["x"].size == 0:
            continue
        ax.plot(eps * cols["x"], eps * cols["mean_rho"], label=label)
        drew = True
    if drew:
        ax.legend(fontsize=8)
    fig.savefig(out)
    plt.close(fig)


def _file_time(path: Path, index: int) -> float:
    m = _TIME_RE.search(path.name)
    return float(m.group(1)) if m else float(index)


def plot_spacetime(paths: list[Path], labels: list[str], out: Path) -> None:
    fields = []
    for i, path in enumerate(paths):
        cols = read_csv_columns(path)
        require(cols, ["x", "mean_rho"], path)
        fields.append((_file_time(path, i), cols["x"], cols["mean_rho"]))
    fields.sort(key=lambda item: item[0])
    fig, ax = _new_axes("x", "t")
    nonempty = [f for f in fields if f[1].size]
    if nonempty:
        x = nonempty[0][1]
        for _, xi, _ in nonempty:
            if xi.shape != x.shape or not np.array_equal(xi, x):
                raise SchemaError("spacetime inputs must share the x grid")
        times = np.array([f[0] for f in nonempty])
        grid = np.stack([f[2] for f in nonempty])
        mesh = ax.pcolormesh(x, times, grid, shading="nearest")
        fig.colorbar(mesh, ax=ax, label="mean rho")
        if labels and labels[0]:
            ax.set_title(labels[0])
    fig.savefig(out)
    plt.close(fig)


_PLOTTERS = {
    "profiles": plot_profiles,
    "linf_series": plot_linf_series,
    "rescaled_profile": plot_rescaled,
    "spacetime": plot_spacetime,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot.py", description="Regenerate figures from chemo-sap CSVs")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--in", dest="inputs", required=True,
                        help="comma-separated CSV paths")
    parser.add_argument("--labels", default="",
                        help="comma-separated legend labels")
    parser.add_argument("--out", required=True, help="output PNG path")
    args = parser.parse_args(argv)

    paths = [Path(p.strip()) for p in args.inputs.split(",") if p.strip()]
    labels = [l.strip() for l in args.labels.split(",")] if args.labels else []
    if not paths:
        print("error: --in needs at least one CSV path", file=sys.stderr)
        return 2
    labels += [p.stem for p in paths[len(labels):]]
    if len(labels) != len(paths) and args.kind != "spacetime":
        print("error: --labels count does not match --in count", file=sys.stderr)
        return 2
    missing = [p for p in paths if not p.is_file()]
    if missing:
        print(f"error: missing input files: {', '.join(map(str, missing))}",
              file=sys.stderr)
        return 2

    try:
        _PLOTTERS[args.kind](paths, labels, Path(args.out))
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
