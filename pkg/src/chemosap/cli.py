"""Command-line interface.

``chemo-sap run --config <path> [--out <dir>]`` runs one simulation,
``chemo-sap sweep --config <path> --eps 1,0.1,...`` fans the same config out
over epsilon values (one subdirectory each), and ``chemo-sap validate
--config <path>`` checks a config without time stepping.  Exit codes:
0 success, 2 configuration error, 3 numerical-state error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .collocation import CollocationResult, run_collocation
from .config import SimConfig, parse_config
from .errors import ChemoSapError, ConfigurationError, NumericalStateError
from .gpc import build_basis
from .grids import make_spatial_grid, half_velocity_quadrature
from .output import write_outputs
from .runner import ScalarRow, Snapshot, build_initial, run_simulation

__all__ = ["main"]


def _load_config(path: str) -> SimConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def _collocation_outputs(cfg: SimConfig, result: CollocationResult, grid):
    """Reduce a collocation ensemble to the shared CSV schema (K = 1 modes)."""
    series, snapshots = [], []
    for i, t in enumerate(result.times):
        mean, std = result.mean[i], result.std[i]
        series.append(ScalarRow(
            t=float(t),
            total_mass=float(np.sum(mean) * grid.dx),
            linf_mean_rho=float(np.max(np.abs(mean))),
            std_linf=float(np.max(std)),
            second_moment=float(np.sum(0.5 * grid.centers ** 2 * mean) * grid.dx),
        ))
        snapshots.append(Snapshot(t=float(t), mean_rho=mean, std_rho=std,
                                  modes=mean[:, None], mean_s=result.mean_s[i]))
    return series, snapshots


def _run_one(cfg: SimConfig, out_dir: str) -> None:
    grid = make_spatial_grid(cfg.x_max, cfg.n_cells)
    if cfg.uq == "collocation":
        result = run_collocation(cfg)
        series, snapshots = _collocation_outputs(cfg, result, grid)
        write_outputs(series, snapshots, out_dir, grid)
        blow_up = None
    else:
        sim = run_simulation(cfg)
        write_outputs(sim.series, sim.snapshots, out_dir, grid)
        blow_up = sim.blow_up_time
    msg = f"wrote {out_dir}"
    if blow_up is not None:
        msg += f" (amplitude threshold crossed at t = {blow_up:.6g})"
    print(msg)


def _cmd_run(args) -> int:
    cfg = _load_config(args.config)
    _run_one(cfg, args.out or cfg.output_dir)
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    base = Path(args.out or cfg.output_dir)
    tokens = [t.strip() for t in args.eps.split(",") if t.strip()]
    if not tokens:
        raise ConfigurationError("--eps needs a comma-separated list of values")
    for token in tokens:
        try:
            eps = float(token)
        except ValueError as exc:
            raise ConfigurationError(f"malformed eps value {token!r}") from exc
        member = replace(cfg, eps=eps)
        member.validate()
        _run_one(member, str(base / f"eps_{token}"))
    return 0


def _cmd_validate(args) -> int:
    cfg = _load_config(args.config)
    grid = make_spatial_grid(cfg.x_max, cfg.n_cells)
    order = 0 if cfg.uq == "deterministic" else cfg.gpc_order
    basis = build_basis(order)
    vel = half_velocity_quadrature(cfg.n_v, cfg.v_max)
    build_initial(cfg, basis, grid, vel)  # checks non-negativity at z nodes
    print(f"config ok: model={cfg.model} uq={cfg.uq} eps={cfg.eps} "
          f"dt={cfg.dt:.6g} steps={int(round(cfg.t_end / cfg.dt))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chemo-sap",
        description="Stochastic asymptotic-preserving chemotaxis solver")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one simulation")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", default=None)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run the config over several eps values")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--eps", required=True,
                         help="comma-separated eps values, e.g. 1,0.1,1e-2")
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate", help="check a config without running")
    p_val.add_argument("--config", required=True)
    p_val.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (NumericalStateError, ChemoSapError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
