"""Figure scripts, exercised as subprocesses on hand-written CSVs.

These tests never invoke the solver; they only write small CSV files in
the published schema and run ``plot.py`` on them.
"""

import subprocess
import sys
from pathlib import Path

PLOT = Path(__file__).resolve().parents[1] / "plot.py"

FIELDS_HEADER = "x,mean_rho,std_rho,mode_1,mean_s\n"
SCALARS_HEADER = "t,total_mass,linf_mean_rho,std_linf,second_moment\n"


def run_plot(*args):
    return subprocess.run([sys.executable, str(PLOT), *args],
                          capture_output=True, text=True)


def _fields_csv(path: Path, xs, amp=1.0):
    rows = [FIELDS_HEADER]
    for x in xs:
        rho = amp * max(1.0 - abs(x), 0.0)
        rows.append(f"{x},{rho},{0.1 * rho},{rho},{0.5 * rho}\n")
    path.write_text("".join(rows), encoding="utf-8")


def _scalars_csv(path: Path, n=5):
    rows = [SCALARS_HEADER]
    for i in range(n):
        t = 1e-3 * i
        rows.append(f"{t},3.14,{1.0 + 0.2 * i},{0.05 * i},{0.25}\n")
    path.write_text("".join(rows), encoding="utf-8")


def test_profiles_renders_and_is_deterministic(tmp_path):
    xs = [-0.5, 0.0, 0.5]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    _fields_csv(a, xs, amp=1.0)
    _fields_csv(b, xs, amp=2.0)
    out = tmp_path / "fig.png"
    res = run_plot("--kind", "profiles", "--in", f"{a},{b}",
                   "--labels", "eps=0.5,eps=0.1", "--out", str(out))
    assert res.returncode == 0, res.stderr
    first = out.read_bytes()
    assert first[:8] == b"\x89PNG\r\n\x1a\n"
    res = run_plot("--kind", "profiles", "--in", f"{a},{b}",
                   "--labels", "eps=0.5,eps=0.1", "--out", str(out))
    assert res.returncode == 0
    assert out.read_bytes() == first


def test_linf_series_renders(tmp_path):
    s = tmp_path / "scalars.csv"
    _scalars_csv(s)
    out = tmp_path / "series.png"
    res = run_plot("--kind", "linf_series", "--in", str(s),
                   "--labels", "kinetic", "--out", str(out))
    assert res.returncode == 0, res.stderr
    assert out.is_file()


def test_rescaled_profile_requires_eps_label(tmp_path):
    f = tmp_path / "f.csv"
    _fields_csv(f, [-0.5, 0.0, 0.5])
    out = tmp_path / "r.png"
    res = run_plot("--kind", "rescaled_profile", "--in", str(f),
                   "--labels", "eps=0.1", "--out", str(out))
    assert res.returncode == 0, res.stderr
    assert out.is_file()
    res = run_plot("--kind", "rescaled_profile", "--in", str(f),
                   "--labels", "no-epsilon-here", "--out", str(out))
    assert res.returncode == 2
    assert "eps=" in res.stderr


def test_spacetime_heatmap(tmp_path):
    xs = [-0.5, 0.0, 0.5]
    paths = []
    for i, t in enumerate((0.001, 0.002, 0.003)):
        p = tmp_path / f"fields_t{t:.6f}.csv"
        _fields_csv(p, xs, amp=1.0 + i)
        paths.append(str(p))
    out = tmp_path / "st.png"
    res = run_plot("--kind", "spacetime", "--in", ",".join(paths),
                   "--labels", "two-peak", "--out", str(out))
    assert res.returncode == 0, res.stderr
    assert out.is_file()


def test_missing_column_names_it(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,density\n0.0,1.0\n", encoding="utf-8")
    res = run_plot("--kind", "profiles", "--in", str(bad),
                   "--labels", "l", "--out", str(tmp_path / "o.png"))
    assert res.returncode == 2
    assert "mean_rho" in res.stderr


def test_header_only_csv_gives_empty_axes(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text(FIELDS_HEADER, encoding="utf-8")
    out = tmp_path / "empty.png"
    res = run_plot("--kind", "profiles", "--in", str(empty),
                   "--labels", "none", "--out", str(out))
    assert res.returncode == 0, res.stderr
    assert out.is_file()


def test_missing_input_file(tmp_path):
    res = run_plot("--kind", "profiles", "--in", str(tmp_path / "nope.csv"),
                   "--labels", "l", "--out", str(tmp_path / "o.png"))
    assert res.returncode == 2
    assert "missing input" in res.stderr
