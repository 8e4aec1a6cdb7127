"""CSV writers and readers."""

import numpy as np
import pytest

from chemosap.errors import ChemoSapError
from chemosap.grids import make_spatial_grid
from chemosap.output import (read_fields, read_scalars, snapshot_filename,
                             write_outputs)
from chemosap.runner import ScalarRow, Snapshot


def _payload(grid, K=3):
    rng = np.random.default_rng(5)
    series = [ScalarRow(t=0.0, total_mass=1.0, linf_mean_rho=2.0,
                        std_linf=0.5, second_moment=0.25),
              ScalarRow(t=1e-3, total_mass=1.0, linf_mean_rho=2.125,
                        std_linf=0.5625, second_moment=0.2461)]
    snapshots = [Snapshot(t=1e-3,
                          mean_rho=rng.normal(size=grid.n_cells),
                          std_rho=np.abs(rng.normal(size=grid.n_cells)),
                          modes=rng.normal(size=(grid.n_cells, K)),
                          mean_s=rng.normal(size=grid.n_cells))]
    return series, snapshots


def test_round_trip_is_bit_exact(tmp_path):
    """[DERIVED] repr-based formatting reproduces every float exactly."""
    grid = make_spatial_grid(1.0, 16)
    series, snapshots = _payload(grid)
    paths = write_outputs(series, snapshots, tmp_path, grid)
    assert any(p.name == "scalars.csv" for p in paths)
    scalars = read_scalars(tmp_path / "scalars.csv")
    np.testing.assert_array_equal(scalars["t"], [0.0, 1e-3])
    np.testing.assert_array_equal(scalars["linf_mean_rho"], [2.0, 2.125])
    fields = read_fields(tmp_path / snapshot_filename(1e-3))
    np.testing.assert_array_equal(fields["x"], grid.centers)
    np.testing.assert_array_equal(fields["mean_rho"], snapshots[0].mean_rho)
    np.testing.assert_array_equal(fields["std_rho"], snapshots[0].std_rho)
    np.testing.assert_array_equal(fields["mode_2"], snapshots[0].modes[:, 1])
    np.testing.assert_array_equal(fields["mean_s"], snapshots[0].mean_s)


def test_rewrite_is_byte_identical(tmp_path):
    """[DERIVED] writing the same payload twice gives identical bytes."""
    grid = make_spatial_grid(1.0, 16)
    series, snapshots = _payload(grid)
    a, b = tmp_path / "a", tmp_path / "b"
    write_outputs(series, snapshots, a, grid)
    write_outputs(series, snapshots, b, grid)
    for name in ("scalars.csv", snapshot_filename(1e-3)):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_snapshot_filename_format():
    assert snapshot_filename(0.003) == "fields_t0.003000.csv"
    assert snapshot_filename(0.1) == "fields_t0.100000.csv"


def test_write_failure_wrapped(tmp_path):
    grid = make_spatial_grid(1.0, 8)
    series, snapshots = _payload(grid)
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    with pytest.raises(ChemoSapError):
        write_outputs(series, snapshots, blocker / "sub", grid)
