"""Experiment orchestration: initial data, scalar diagnostics, time loops.

Initial data is the multi-peak family

    rho_I(x, z) = sum_p (amp0_p + amp1_p z) * 4 sqrt(5 pi)
                  * exp(-width_p (x - center0_p - center1_p z)^2),

projected onto the gPC basis; the kinetic distribution starts at local
equilibrium (r = rho F, j = 0).  A unit-amplitude peak of width 80 carries
total mass pi, so amplitudes double as mass dials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import imex, limit
from .chemo import ChemoSolver
from .config import SimConfig
from .errors import ConfigurationError, ContractViolation
from .gpc import (GpcBasis, RandomCoefficient, build_basis,
                  build_static_matrices, mean_std, project_function)
from .grids import SpatialGrid, VelocityQuad, half_velocity_quadrature, make_spatial_grid
from .imex import KineticContext, KineticState
from .kernels import ModelKind
from .limit import KellerSegelContext, MacroState, transport_coefficients

__all__ = [
    "ScalarRow",
    "Snapshot",
    "SimResult",
    "BLOWUP_RATIO",
    "rho_initial_nodes",
    "build_initial",
    "diagnostics",
    "run_simulation",
]

BLOWUP_RATIO = 10.0


@dataclass(frozen=True)
class ScalarRow:
    t: float
    total_mass: float
    linf_mean_rho: float
    std_linf: float
    second_moment: float


@dataclass(frozen=True)
class Snapshot:
    """Field data at one recorded time, already reduced to output columns."""

    t: float
    mean_rho: np.ndarray
    std_rho: np.ndarray
    modes: np.ndarray   # (n_cells, K); K = 1 for deterministic/collocation data
    mean_s: np.ndarray


@dataclass
class SimResult:
    grid: SpatialGrid
    basis: GpcBasis
    series: list[ScalarRow]
    snapshots: list[Snapshot]
    blow_up_time: float | None
    final_rho_hat: np.ndarray
    final_state: object = None


def rho_initial_nodes(cfg: SimConfig, grid: SpatialGrid, z: np.ndarray) -> np.ndarray:
    """rho_I evaluated on the tensor grid (n_cells, n_z)."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    x = grid.centers[:, None]
    rho = np.zeros((grid.n_cells, z.size))
    scale = 4.0 * math.sqrt(5.0 * math.pi)
    for p in cfg.peaks:
        amp = p.amp0 + p.amp1 * z
        center = p.center0 + p.center1 * z
        rho += amp[None, :] * scale * np.exp(-p.width * (x - center[None, :]) ** 2)
    return rho


def build_initial(cfg: SimConfig, basis: GpcBasis, grid: SpatialGrid,
                  vel: VelocityQuad | None = None):
    """Initial KineticState (kinetic models) or MacroState (ks-limit).

    The kinetic state needs the velocity rule to spread rho over the
    equilibrium F = 1/(2 v_max); j starts at zero because the initial
    distribution is even in v.
    """
    rho_nodes = rho_initial_nodes(cfg, grid, basis.z_nodes)
    if np.any(rho_nodes < -1e-12 * np.max(np.abs(rho_nodes))):
        raise ConfigurationError("initial density is negative at some z node")
    rho_hat = project_function(rho_nodes, basis)
    if cfg.model == "ks-limit":
        return MacroState(rho_hat=rho_hat, t=0.0)
    if vel is None:
        raise ContractViolation("kinetic initial data needs the velocity quadrature")
    fbar = 1.0 / (2.0 * cfg.v_max)
    r_hat = np.broadcast_to(fbar * rho_hat[:, None, :],
                            (grid.n_cells, vel.n_v, basis.K)).copy()
    return KineticState(r_hat=r_hat, j_hat=np.zeros_like(r_hat), t=0.0)


def _rho_of(state, vel: VelocityQuad | None) -> np.ndarray:
    if isinstance(state, MacroState):
        return state.rho_hat
    if vel is None:
        raise ContractViolation("kinetic diagnostics need the velocity quadrature")
    return vel.moment(state.r_hat, axis=1)


def diagnostics(state, basis: GpcBasis, grid: SpatialGrid,
                vel: VelocityQuad | None = None) -> ScalarRow:
    """One row of scalar diagnostics for the current state."""
    rho_hat = _rho_of(state, vel)
    mean, std = mean_std(rho_hat)
    return ScalarRow(
        t=state.t,
        total_mass=float(np.sum(rho_hat[:, 0]) * grid.dx),
        linf_mean_rho=float(np.max(np.abs(mean))),
        std_linf=float(np.max(std)),
        second_moment=float(np.sum(0.5 * grid.centers ** 2 * rho_hat[:, 0]) * grid.dx),
    )


def _make_snapshot(rho_hat: np.ndarray, t: float, chemo: ChemoSolver) -> Snapshot:
    mean, std = mean_std(rho_hat)
    s_hat = chemo.solve(rho_hat).s_hat
    return Snapshot(t=t, mean_rho=mean.copy(), std_rho=std.copy(),
                    modes=rho_hat.copy(), mean_s=s_hat[:, 0].copy())


def _snapshot_steps(times, dt: float, n_steps: int) -> dict[int, float]:
    """Map requested times to the nearest completed step (first request wins)."""
    plan: dict[int, float] = {}
    for t_req in times:
        step_idx = int(np.clip(round(t_req / dt), 0, n_steps))
        plan.setdefault(step_idx, t_req)
    return plan


def run_simulation(cfg: SimConfig) -> SimResult:
    """Run one gPC-Galerkin (or deterministic) simulation to t_end.

    An amplitude ratio of BLOWUP_RATIO over the initial mean max is recorded
    as the blow-up proxy time; ks-limit runs halt there, kinetic runs
    continue (the kinetic solution stays bounded at fixed eps).
    """
    if cfg.uq == "collocation":
        raise ConfigurationError("run_simulation handles gpc/deterministic; "
                                 "use run_collocation for uq=collocation")
    grid = make_spatial_grid(cfg.x_max, cfg.n_cells)
    order = 0 if cfg.uq == "deterministic" else cfg.gpc_order
    basis = build_basis(order)
    coeff = RandomCoefficient(*cfg.alpha)
    static = build_static_matrices(coeff, basis)
    vel = half_velocity_quadrature(cfg.n_v, cfg.v_max)
    d_coef, chi = transport_coefficients(vel)

    state = build_initial(cfg, basis, grid, vel)
    if cfg.model == "ks-limit":
        ctx = KellerSegelContext.create(grid, basis, static, coeff, d_coef, chi, vel)
        advance = lambda s: limit.ks_step(s, cfg.dt, ctx)
        chemo = ctx.chemo
    else:
        kind = ModelKind(cfg.model)
        ctx = KineticContext.create(kind, cfg.eps, grid, vel, basis, coeff,
                                    static, d_coef, chi)
        advance = lambda s: imex.step(s, cfg.dt, ctx)
        chemo = ctx.chemo

    n_steps = int(math.ceil(cfg.t_end / cfg.dt - 1e-12))
    plan = _snapshot_steps(cfg.snapshot_times, cfg.dt, n_steps)

    series = [diagnostics(state, basis, grid, vel)]
    snapshots: list[Snapshot] = []
    if 0 in plan:
        snapshots.append(_make_snapshot(_rho_of(state, vel), 0.0, chemo))
    linf0 = max(series[0].linf_mean_rho, np.finfo(float).tiny)
    blow_up_time: float | None = None

    for step_idx in range(1, n_steps + 1):
        state = advance(state)
        row = diagnostics(state, basis, grid, vel)
        series.append(row)
        if step_idx in plan:
            snapshots.append(_make_snapshot(_rho_of(state, vel), state.t, chemo))
        if blow_up_time is None and row.linf_mean_rho >= BLOWUP_RATIO * linf0:
            blow_up_time = state.t
            if cfg.model == "ks-limit":
                break

    return SimResult(grid=grid, basis=basis, series=series, snapshots=snapshots,
                     blow_up_time=blow_up_time, final_rho_hat=_rho_of(state, vel),
                     final_state=state)
