"""Non-intrusive stochastic collocation oracle.

Runs the deterministic (single-mode) kinetic solver once per z-quadrature
node with alpha, peak amplitudes, and peak centers frozen at that node, then
reduces the ensemble to mean and standard deviation fields.  The reduction
walks the nodes in ascending order so the output is bit-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .config import Peak, SimConfig
from .errors import ConfigurationError, NumericalStateError
from .grids import gauss_legendre
from .runner import SimResult, run_simulation

__all__ = ["CollocationPlan", "CollocationResult", "make_collocation_plan",
           "run_collocation"]


@dataclass(frozen=True)
class CollocationPlan:
    nodes: np.ndarray
    weights: np.ndarray  # include the density 1/2; they sum to 1
    n_nodes: int


@dataclass
class CollocationResult:
    times: np.ndarray          # snapshot times, ascending
    mean: np.ndarray           # (n_times, n_cells)
    std: np.ndarray            # (n_times, n_cells)
    mean_s: np.ndarray         # (n_times, n_cells)
    clamp_rel: float           # largest negative-variance clamp, relative
    members: list[SimResult]


def make_collocation_plan(n_nodes: int) -> CollocationPlan:
    """Gauss-Legendre rule on [-1, 1] with the uniform density folded in."""
    if n_nodes < 1:
        raise ConfigurationError(f"collocation needs at least 1 node, got {n_nodes}")
    nodes, weights = gauss_legendre(n_nodes, -1.0, 1.0)
    return CollocationPlan(nodes=nodes, weights=0.5 * weights, n_nodes=n_nodes)


def _member_config(cfg: SimConfig, z: float) -> SimConfig:
    peaks = [Peak(amp0=p.amp0 + p.amp1 * z, amp1=0.0, width=p.width,
                  center0=p.center0 + p.center1 * z, center1=0.0)
             for p in cfg.peaks]
    alpha = (cfg.alpha[0] + cfg.alpha[1] * z, 0.0)
    return replace(cfg, uq="deterministic", gpc_order=0, peaks=peaks, alpha=alpha)


def run_collocation(cfg: SimConfig, plan: CollocationPlan | None = None) -> CollocationResult:
    """Ensemble run at the plan nodes, reduced to mean/std snapshot series."""
    if plan is None:
        plan = make_collocation_plan(cfg.colloc_nodes)
    members: list[SimResult] = []
    failures: list[str] = []
    for z in plan.nodes:
        try:
            members.append(run_simulation(_member_config(cfg, float(z))))
        except Exception as exc:  # aggregated below, naming each node
            failures.append(f"z={float(z):+.6f}: {exc}")
    if failures:
        raise NumericalStateError(
            "collocation members failed at " + "; ".join(failures))

    n_times = len(members[0].snapshots)
    if any(len(m.snapshots) != n_times for m in members):
        raise NumericalStateError("collocation members recorded differing snapshots")

    w = plan.weights[:, None]
    times = np.array([s.t for s in members[0].snapshots])
    mean = np.empty((n_times, cfg.n_cells))
    std = np.empty_like(mean)
    mean_s = np.empty_like(mean)
    clamp_rel = 0.0
    for i in range(n_times):
        fields = np.stack([m.snapshots[i].mean_rho for m in members])  # (n_nodes, n)
        s_fields = np.stack([m.snapshots[i].mean_s for m in members])
        mu = np.sum(w * fields, axis=0)
        # centered form: avoids the E[f^2]-mu^2 cancellation when members agree
        var = np.sum(w * (fields - mu) ** 2, axis=0)
        scale = max(float(np.max(np.abs(var))), np.finfo(float).tiny)
        clamp_rel = max(clamp_rel, float(-np.min(var) / scale) if np.min(var) < 0 else 0.0)
        mean[i] = mu
        std[i] = np.sqrt(np.maximum(var, 0.0))
        mean_s[i] = np.sum(w * s_fields, axis=0)
    return CollocationResult(times=times, mean=mean, std=std, mean_s=mean_s,
                             clamp_rel=clamp_rel, members=members)
