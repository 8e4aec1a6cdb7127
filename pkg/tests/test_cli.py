"""Command-line interface, exercised in process through main()."""

import numpy as np
import pytest

from chemosap.cli import main
from chemosap.output import read_fields, read_scalars


BASE = """
model = nonlocal
eps = 0.1
t_end = 1.25e-3
n_cells = 64
peaks = 1@80@0
alpha = 1+0.5z
snapshot_times = 1.25e-3
"""


def _write_cfg(tmp_path, text=BASE, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_run_writes_csv_outputs(tmp_path, capsys):
    cfg = _write_cfg(tmp_path)
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == 0
    assert "wrote" in capsys.readouterr().out
    scalars = read_scalars(out / "scalars.csv")
    assert scalars["t"][0] == 0.0
    assert len(scalars["t"]) == 3
    fields = read_fields(out / "fields_t0.001250.csv")
    assert fields["mean_rho"].shape == (64,)
    assert "mode_5" in fields  # gpc_order 4 -> K = 5 mode columns


def test_run_collocation_config(tmp_path):
    cfg = _write_cfg(tmp_path, BASE + "uq = collocation\ncolloc_nodes = 3\n")
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == 0
    fields = read_fields(out / "fields_t0.001250.csv")
    assert "mode_1" in fields and "mode_2" not in fields
    assert np.all(fields["std_rho"] >= 0.0)


def test_sweep_creates_eps_subdirectories(tmp_path):
    cfg = _write_cfg(tmp_path)
    out = tmp_path / "sweep"
    assert main(["sweep", "--config", cfg, "--eps", "1,0.1", "--out",
                 str(out)]) == 0
    for token in ("1", "0.1"):
        assert (out / f"eps_{token}" / "scalars.csv").exists()


def test_validate_ok_and_messages(tmp_path, capsys):
    cfg = _write_cfg(tmp_path)
    assert main(["validate", "--config", cfg]) == 0
    assert "config ok" in capsys.readouterr().out


def test_configuration_errors_exit_2(tmp_path, capsys):
    bad = _write_cfg(tmp_path, "model = nonlocal\n", name="bad.cfg")
    assert main(["validate", "--config", bad]) == 2
    assert "configuration error" in capsys.readouterr().err
    assert main(["validate", "--config", str(tmp_path / "missing.cfg")]) == 2
    capsys.readouterr()
    assert main(["sweep", "--config", _write_cfg(tmp_path), "--eps", "oops",
                 "--out", str(tmp_path / "s")]) == 2


def test_output_failures_exit_3(tmp_path, capsys):
    # writing under a path blocked by a regular file raises the wrapped error
    cfg = _write_cfg(tmp_path)
    blocker = tmp_path / "blocked"
    blocker.write_text("not a directory")
    assert main(["run", "--config", cfg, "--out", str(blocker / "sub")]) == 3
    assert "numerical error" in capsys.readouterr().err
