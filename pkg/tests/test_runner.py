"""Simulation driver: initial data, diagnostics, snapshots, blow-up handling."""

import math

import numpy as np
import pytest

from chemosap.config import Peak, SimConfig
from chemosap.errors import ConfigurationError
from chemosap.gpc import build_basis
from chemosap.grids import half_velocity_quadrature, make_spatial_grid
from chemosap.runner import (_snapshot_steps, build_initial, rho_initial_nodes,
                             run_simulation)


def _peaks(amp0=1.0, amp1=0.0):
    return [Peak(amp0=amp0, amp1=amp1, width=80.0, center0=0.0, center1=0.0)]


def test_initial_mass_is_amp_times_pi():
    """[DERIVED] the amplitude normalization makes mass = amp0 * pi."""
    cfg = SimConfig(model="ks-limit", eps=0.0, t_end=1e-3, n_cells=400,
                    peaks=_peaks(amp0=2.0))
    grid = make_spatial_grid(1.0, 400)
    rho = rho_initial_nodes(cfg, grid, np.array([0.0]))[:, 0]
    assert np.sum(rho) * grid.dx == pytest.approx(2.0 * math.pi, rel=1e-6)


def test_initial_mass_varies_affinely_in_z():
    cfg = SimConfig(model="ks-limit", eps=0.0, t_end=1e-3, n_cells=400,
                    peaks=_peaks(amp0=1.0, amp1=0.5))
    grid = make_spatial_grid(1.0, 400)
    rho = rho_initial_nodes(cfg, grid, np.array([-1.0, 1.0]))
    assert np.sum(rho[:, 0]) * grid.dx == pytest.approx(0.5 * math.pi, rel=1e-6)
    assert np.sum(rho[:, 1]) * grid.dx == pytest.approx(1.5 * math.pi, rel=1e-6)


def test_negative_initial_density_rejected():
    cfg = SimConfig(model="ks-limit", eps=0.0, t_end=1e-3, n_cells=100,
                    peaks=_peaks(amp0=1.0, amp1=-1.5))
    grid = make_spatial_grid(1.0, 100)
    basis = build_basis(4)
    with pytest.raises(ConfigurationError):
        build_initial(cfg, basis, grid, half_velocity_quadrature(8, 1.0))


def test_snapshot_steps_mapping():
    """[TRIVIAL] nearest-step rounding, clipped, first request wins."""
    plan = _snapshot_steps([0.0, 0.0011, 0.00149, 9.9], 1e-3, 5)
    assert plan == {0: 0.0, 1: 0.0011, 5: 9.9}


def test_run_records_series_and_snapshots():
    cfg = SimConfig(model="nonlocal", eps=0.1, t_end=1.25e-3, n_cells=64,
                    peaks=_peaks(), snapshot_times=[0.0, 1.25e-3])
    res = run_simulation(cfg)
    assert len(res.series) == 3  # initial row + two steps
    assert [s.t for s in res.snapshots] == [0.0, pytest.approx(1.25e-3)]
    assert res.blow_up_time is None
    row = res.series[-1]
    assert row.total_mass == pytest.approx(math.pi, rel=1e-6)
    assert row.linf_mean_rho > 0.0
    assert row.second_moment > 0.0


def test_ks_limit_halts_at_blow_up():
    """[DERIVED] supercritical deterministic mass collapses and stops the run."""
    cfg = SimConfig(model="ks-limit", eps=0.0, t_end=0.05, n_cells=200,
                    uq="deterministic", peaks=_peaks(amp0=4.0))
    res = run_simulation(cfg)
    assert res.blow_up_time is not None
    assert res.blow_up_time < 0.02
    assert res.series[-1].t == pytest.approx(res.blow_up_time)
    assert res.series[-1].linf_mean_rho >= 10.0 * res.series[0].linf_mean_rho


def test_collocation_config_rejected_by_run_simulation():
    cfg = SimConfig(model="nonlocal", eps=0.1, t_end=1e-3, n_cells=64,
                    uq="collocation", peaks=_peaks())
    with pytest.raises(ConfigurationError):
        run_simulation(cfg)
