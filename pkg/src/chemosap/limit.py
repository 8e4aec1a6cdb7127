"""Limiting Keller-Segel solver and the critical-mass analytics.

The limiting solver advances the macroscopic gPC density with the exact
eps = 0 reduction of the kinetic IMEX stepper: the stage relaxation solves
degenerate to their asymptotic balances (the even parity is slaved to the
moment, the odd parity to the Fickian flux), which yields a consistent
discretization of the Keller-Segel equation
d/dt rho = d/dx (D M~ d/dx rho - chi G~ rho).  At eps = 0 the density update
depends on rho^n alone, so the step is genuinely macroscopic; sharing every
operator with the kinetic solver keeps asymptotic comparisons free of
discretization confounders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .chemo import ChemoSolver
from .errors import ConfigurationError, NumericalStateError
from .gpc import GpcBasis, RandomCoefficient, SpectralStatic
from .grids import SpatialGrid, VelocityQuad
from .imex import ButcherPair, KineticContext, KineticState
from .imex import step as kinetic_step
from .kernels import ModelKind

__all__ = [
    "MacroState",
    "CriticalMass",
    "KellerSegelContext",
    "transport_coefficients",
    "critical_mass",
    "ks_step",
    "second_moment_rate",
]


@dataclass
class MacroState:
    rho_hat: np.ndarray  # (n_cells, K)
    t: float


@dataclass(frozen=True)
class CriticalMass:
    Mc_of_z: Callable
    Mc_mean: float


def transport_coefficients(vel: VelocityQuad) -> tuple[float, float]:
    """(D, chi) for the uniform equilibrium F = 1/|V| on V = [-v_max, v_max]."""
    second = float(np.sum(vel.weights * vel.nodes ** 2))  # int_0^vmax v^2 dv
    d_coef = second / vel.v_max   # int_V v^2 F dv with F = 1/(2 v_max)
    chi = second                  # (1/2) int_V v^2 dv
    return d_coef, chi


def critical_mass(coeff: RandomCoefficient, d_coef: float, chi: float,
                  basis: GpcBasis) -> CriticalMass:
    """Pointwise critical mass 2 pi D / (chi alpha(z)) and its expectation."""
    alpha_nodes = coeff(basis.z_nodes)
    if np.any(alpha_nodes <= 0.0):
        raise ConfigurationError("alpha must stay positive on the z interval")

    def mc_of_z(z):
        return 2.0 * np.pi * d_coef / (chi * coeff(z))

    mc_mean = float(np.sum(basis.z_weights * mc_of_z(basis.z_nodes)))
    return CriticalMass(Mc_of_z=mc_of_z, Mc_mean=mc_mean)


@dataclass
class KellerSegelContext:
    grid: SpatialGrid
    basis: GpcBasis
    static: SpectralStatic
    d_coef: float
    chi: float
    kinetic: KineticContext

    @classmethod
    def create(cls, grid, basis, static, coeff, d_coef, chi, vel, tableau=None):
        """chi may be scaled away from its natural value (e.g. to 0) to weaken
        or disable the chemotactic drift; diffusion keeps coefficient d_coef."""
        chi_natural = float(np.sum(vel.weights * vel.nodes ** 2))
        kinetic = KineticContext.create(
            ModelKind.NONLOCAL, 0.0, grid, vel, basis, coeff, static,
            d_coef, chi, tableau=tableau, chemo_scale=chi / chi_natural)
        return cls(grid=grid, basis=basis, static=static, d_coef=d_coef,
                   chi=chi, kinetic=kinetic)

    @property
    def chemo(self) -> ChemoSolver:
        return self.kinetic.chemo


def ks_step(state: MacroState, dt: float, ctx: KellerSegelContext) -> MacroState:
    """One step of the limiting solver: lift to equilibrium, take an eps = 0
    kinetic stage sweep, and take the velocity moment back."""
    fbar = ctx.kinetic.fbar
    shape = (ctx.grid.n_cells, ctx.kinetic.vel.n_v, ctx.basis.K)
    r = np.broadcast_to(fbar * state.rho_hat[:, None, :], shape).copy()
    lifted = KineticState(r_hat=r, j_hat=np.zeros_like(r), t=state.t)
    stepped = kinetic_step(lifted, dt, ctx.kinetic)
    rho_new = ctx.kinetic.moment(stepped.r_hat)
    if not np.all(np.isfinite(rho_new)):
        raise NumericalStateError("non-finite density after Keller-Segel step")
    return MacroState(rho_hat=rho_new, t=state.t + dt)


def second_moment_rate(rho: np.ndarray, alpha, d_coef: float, chi: float,
                       grid: SpatialGrid) -> float:
    """Predicted d/dt of (1/2) int x^2 rho dx for a deterministic slice.

    ``alpha`` is the (constant) tumbling rate; a RandomCoefficient is
    evaluated at z = 0.
    """
    if callable(alpha):
        alpha = float(alpha(0.0))
    rho = np.asarray(rho, dtype=float)
    mass = float(np.sum(rho) * grid.dx)
    mc = 2.0 * np.pi * d_coef / (chi * alpha)
    boundary = -(d_coef / alpha) * grid.x_max * (rho[0] + rho[-1])
    collapse = -(chi / (2.0 * np.pi)) * mass ** 2 * (1.0 - mc / mass)
    return boundary + collapse
