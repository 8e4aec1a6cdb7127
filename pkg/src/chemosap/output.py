"""CSV emission for scalar series and field snapshots.

Floats are written with ``repr`` (shortest round-trip form, '.' separator)
and files use LF line endings, so identical runs produce byte-identical
output and values survive a parse round trip bit-exactly.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import ChemoSapError
from .grids import SpatialGrid
from .runner import ScalarRow, Snapshot

__all__ = ["SCALARS_HEADER", "write_outputs", "read_scalars", "read_fields"]

SCALARS_HEADER = ["t", "total_mass", "linf_mean_rho", "std_linf", "second_moment"]


def _fmt(x: float) -> str:
    return repr(float(x))


def snapshot_filename(t: float) -> str:
    return f"fields_t{t:.6f}.csv"


def write_outputs(series: list[ScalarRow], snapshots: list[Snapshot],
                  out_dir: str | Path, grid: SpatialGrid) -> list[Path]:
    """Write scalars.csv and one fields_t<time>.csv per snapshot."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []

        scalars = out / "scalars.csv"
        with scalars.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(SCALARS_HEADER)
            for row in series:
                w.writerow([_fmt(row.t), _fmt(row.total_mass),
                            _fmt(row.linf_mean_rho), _fmt(row.std_linf),
                            _fmt(row.second_moment)])
        written.append(scalars)

        for snap in snapshots:
            k_modes = snap.modes.shape[1]
            path = out / snapshot_filename(snap.t)
            with path.open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["x", "mean_rho", "std_rho"]
                           + [f"mode_{k + 1}" for k in range(k_modes)]
                           + ["mean_s"])
                for i in range(grid.n_cells):
                    w.writerow([_fmt(grid.centers[i]), _fmt(snap.mean_rho[i]),
                                _fmt(snap.std_rho[i])]
                               + [_fmt(snap.modes[i, k]) for k in range(k_modes)]
                               + [_fmt(snap.mean_s[i])])
            written.append(path)
        return written
    except OSError as exc:
        raise ChemoSapError(f"cannot write outputs under {out}: {exc}") from exc


def read_scalars(path: str | Path) -> dict[str, np.ndarray]:
    """Read scalars.csv back into column arrays keyed by header name."""
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    data = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


def read_fields(path: str | Path) -> dict[str, np.ndarray]:
    """Read a fields_t*.csv back into column arrays keyed by header name."""
    return read_scalars(path)
