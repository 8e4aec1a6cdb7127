"""Penalized IMEX Runge-Kutta stepper for the projected even-odd system.

One step treats the stiff relaxation and the penalty diffusion implicitly
while transport is explicit (upwind TVD with minmod limiter on the
characteristic variables r +- phi^(-1/2) j).  Each stage first predicts the
stage moment by a block-tridiagonal diffusion solve, rebuilds the
chemoattractant and the coupling matrices from it, then solves the
block-diagonal relaxation systems for the parities.

Walls are specular: ghost cells carry the even reflection of r (and of the
moment) and the odd reflection of j (and of the drift matrices).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chemo import ChemoField, ChemoSolver
from .errors import ConfigurationError, NumericalStateError
from .gpc import GpcBasis, RandomCoefficient, SpectralStatic
from .grids import SpatialGrid, VelocityQuad
from .kernels import ModelKind, assemble_drift_matrix, assemble_kernel_matrices

__all__ = [
    "ButcherPair",
    "PenaltySettings",
    "KineticState",
    "KineticContext",
    "ssp332",
    "penalties",
    "minmod_slopes",
    "implicit_diffusion_solve",
    "limit_operator",
    "step",
]


@dataclass(frozen=True)
class ButcherPair:
    s_stages: int
    A_exp: np.ndarray
    A_imp: np.ndarray
    b_exp: np.ndarray
    b_imp: np.ndarray
    c_exp: np.ndarray
    c_imp: np.ndarray


def ssp332() -> ButcherPair:
    """The SSP(3,3,2) type-A IMEX pair (invertible implicit matrix)."""
    a_exp = np.array([[0.0, 0.0, 0.0],
                      [0.5, 0.0, 0.0],
                      [0.5, 0.5, 0.0]])
    a_imp = np.array([[0.25, 0.0, 0.0],
                      [0.0, 0.25, 0.0],
                      [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]])
    b = np.array([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0])
    return ButcherPair(
        s_stages=3,
        A_exp=a_exp,
        A_imp=a_imp,
        b_exp=b.copy(),
        b_imp=b.copy(),
        c_exp=a_exp.sum(axis=1),
        c_imp=a_imp.sum(axis=1),
    )


@dataclass(frozen=True)
class PenaltySettings:
    mu: float
    phi: float


def penalties(eps: float, dx: float) -> PenaltySettings:
    """Penalty weight mu = exp(-eps^2/dx) and stiffness split phi = min(1, 1/eps^2)."""
    if eps < 0.0:
        raise ConfigurationError(f"eps must be >= 0, got {eps}")
    if not dx > 0.0:
        raise ConfigurationError(f"dx must be positive, got {dx}")
    mu = float(np.exp(-eps * eps / dx))
    phi = 1.0 if eps == 0.0 else min(1.0, 1.0 / (eps * eps))
    return PenaltySettings(mu=mu, phi=phi)


@dataclass
class KineticState:
    r_hat: np.ndarray  # (n_cells, n_v, K)
    j_hat: np.ndarray  # (n_cells, n_v, K)
    t: float


def _pad(u: np.ndarray, layers: int, sign: float) -> np.ndarray:
    """Extend along axis 0 by mirrored ghost cells carrying the given sign."""
    left = sign * u[layers - 1::-1]
    right = sign * u[:-layers - 1:-1]
    return np.concatenate([left, u, right], axis=0)


def _minmod(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    same = a * b > 0.0
    return np.where(same, np.where(np.abs(a) < np.abs(b), a, b), 0.0)


def minmod_slopes(r_hat, j_hat, phi, grid):
    """Minmod-limited slopes of the characteristic variables r +- phi^(-1/2) j.

    Returns (gamma, beta) on cells -1..n_cells (one ghost layer each side),
    so the flux differences gamma_i - gamma_{i-1} and beta_{i+1} - beta_i are
    available for every interior cell.
    """
    inv_sqrt_phi = 1.0 / np.sqrt(phi)
    rp = _pad(np.asarray(r_hat, dtype=float), 2, 1.0)
    jp = _pad(np.asarray(j_hat, dtype=float), 2, -1.0)
    w_plus = rp + inv_sqrt_phi * jp
    w_minus = rp - inv_sqrt_phi * jp
    d_plus = np.diff(w_plus, axis=0)
    d_minus = np.diff(w_minus, axis=0)
    gamma = _minmod(d_plus[1:], d_plus[:-1]) / grid.dx
    beta = _minmod(d_minus[1:], d_minus[:-1]) / grid.dx
    return gamma, beta


def limit_operator(p_hat, g_tilde, static: SpectralStatic, d_coef, chi, grid):
    """Discrete limiting operator d/dx (D M~ dP/dx - chi G~ P), centered drift."""
    pp = _pad(np.asarray(p_hat, dtype=float), 1, 1.0)
    gp = _pad(np.asarray(g_tilde, dtype=float), 1, -1.0)
    gp_p = np.einsum("ikl,il->ik", gp, pp)
    diffusion = d_coef * (pp[2:] - 2.0 * pp[1:-1] + pp[:-2]) @ static.M_tilde.T \
        / grid.dx ** 2
    drift = chi * (gp_p[2:] - gp_p[:-2]) / (2.0 * grid.dx)
    return diffusion - drift


def _block_thomas(lower, diag, upper, rhs):
    """Solve a block-tridiagonal system with K x K blocks by forward elimination.

    lower[i] couples cell i to i-1 (i >= 1), upper[i] couples i to i+1
    (i <= n-2).  rhs has shape (n, K)."""
    n = diag.shape[0]
    cp = np.empty_like(upper)
    dp = np.empty_like(rhs)
    try:
        cp[0] = np.linalg.solve(diag[0], upper[0])
        dp[0] = np.linalg.solve(diag[0], rhs[0])
        for i in range(1, n):
            denom = diag[i] - lower[i] @ cp[i - 1]
            if i < n - 1:
                cp[i] = np.linalg.solve(denom, upper[i])
            dp[i] = np.linalg.solve(denom, rhs[i] - lower[i] @ dp[i - 1])
    except np.linalg.LinAlgError as exc:
        raise NumericalStateError(f"singular block-tridiagonal solve: {exc}") from exc
    out = np.empty_like(rhs)
    out[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = dp[i] - cp[i] @ out[i + 1]
    return out


def implicit_diffusion_solve(rhs, g_prev, a_kk, dt, mu, static: SpectralStatic,
                             d_coef, chi, grid):
    """Solve (I - dt a_kk mu L) P = rhs with L = limit_operator(., g_prev).

    No-flux walls: the moment is even-reflected and the drift matrices
    odd-reflected into the ghost cells, which folds into the boundary
    diagonal blocks.  The system is block tridiagonal with K x K blocks.
    """
    rhs = np.asarray(rhs, dtype=float)
    n, k_modes = rhs.shape
    if dt * a_kk * mu == 0.0:
        return rhs.copy()
    theta = dt * a_kk * mu * d_coef / grid.dx ** 2
    c = dt * a_kk * mu * chi / (2.0 * grid.dx)
    eye = np.eye(k_modes)
    base = theta * static.M_tilde

    diag = np.broadcast_to(eye + 2.0 * base, (n, k_modes, k_modes)).copy()
    lower = np.empty((n, k_modes, k_modes))
    upper = np.empty((n, k_modes, k_modes))
    lower[1:] = -base - c * g_prev[:-1]
    upper[:-1] = -base + c * g_prev[1:]
    # fold ghost cells: P_{-1} = P_0 with G_{-1} = -G_0, and mirrored on the right
    diag[0] += -base + c * g_prev[0]
    diag[-1] += -base - c * g_prev[-1]
    return _block_thomas(lower, diag, upper, rhs)


@dataclass
class KineticContext:
    model: ModelKind
    eps: float
    grid: SpatialGrid
    vel: VelocityQuad
    basis: GpcBasis
    coeff: RandomCoefficient
    static: SpectralStatic
    tableau: ButcherPair
    penalty: PenaltySettings
    d_coef: float
    chi: float
    chemo: ChemoSolver
    fbar: float
    chemo_scale: float = 1.0

    @classmethod
    def create(cls, model, eps, grid, vel, basis, coeff, static, d_coef, chi,
               tableau=None, chemo_scale=1.0):
        """eps = 0 selects the exact asymptotic limit of the stage solves."""
        if eps < 0.0:
            raise ConfigurationError(f"eps must be >= 0, got {eps}")
        return cls(
            model=model, eps=eps, grid=grid, vel=vel, basis=basis, coeff=coeff,
            static=static, tableau=tableau or ssp332(),
            penalty=penalties(eps, grid.dx), d_coef=d_coef, chi=chi,
            chemo=ChemoSolver(grid), fbar=1.0 / (2.0 * vel.v_max),
            chemo_scale=chemo_scale,
        )

    def moment(self, r_hat):
        return self.vel.moment(r_hat, axis=1)

    def solve_chemo(self, rho_hat) -> ChemoField:
        field = self.chemo.solve(rho_hat)
        if self.chemo_scale == 1.0:
            return field
        return ChemoField(s_hat=self.chemo_scale * field.s_hat,
                          ds_hat=self.chemo_scale * field.ds_hat)


def step(state: KineticState, dt: float, ctx: KineticContext) -> KineticState:
    """Advance the kinetic gPC state by one IMEX step of size dt."""
    tab, grid, vel = ctx.tableau, ctx.grid, ctx.vel
    eps2 = ctx.eps * ctx.eps
    mu, phi = ctx.penalty.mu, ctx.penalty.phi
    sqrt_phi = np.sqrt(phi)
    dx = grid.dx
    v = vel.nodes[None, :, None]
    fbar = ctx.fbar

    r_n, j_n = state.r_hat, state.j_hat
    rho_n = ctx.moment(r_n)
    g_lag = assemble_drift_matrix(ctx.solve_chemo(rho_n), ctx.basis)

    n_stages = tab.s_stages
    f1 = [None] * n_stages
    f2 = [None] * n_stages
    g1 = [None] * n_stages
    g2 = [None] * n_stages

    for k in range(n_stages):
        expl_r = r_n.copy()
        expl_j = j_n.copy()
        for l in range(k):
            expl_r += dt * (tab.A_exp[k, l] * f1[l] + tab.A_imp[k, l] * f2[l])
            expl_j += dt * (tab.A_exp[k, l] * g1[l] + tab.A_imp[k, l] * g2[l])
        a_kk = tab.A_imp[k, k]

        # stage moment prediction, then stage chemoattractant and couplings
        p_k = implicit_diffusion_solve(ctx.moment(expl_r), g_lag, a_kk, dt, mu,
                                       ctx.static, ctx.d_coef, ctx.chi, grid)
        chemo_k = ctx.solve_chemo(p_k)
        mats = assemble_kernel_matrices(ctx.model, chemo_k, ctx.basis, ctx.coeff,
                                        ctx.eps, grid, vel)
        ldiff_lag = limit_operator(p_k, g_lag, ctx.static, ctx.d_coef, ctx.chi, grid)
        ldiff_k = limit_operator(p_k, mats.G_tilde, ctx.static, ctx.d_coef,
                                 ctx.chi, grid)

        # implicit relaxation solve for the even parity; at eps = 0 the solve
        # degenerates to its asymptotic balance (M + C) r = source
        mp = p_k @ ctx.static.M.T
        bp = np.einsum("iqkl,il->iqk", mats.B, p_k)
        relax_src = fbar * mp[:, None, :] + bp
        try:
            if eps2 > 0.0:
                rhs_r = expl_r + dt * a_kk * (relax_src / eps2
                                              + mu * fbar * ldiff_lag[:, None, :])
                a_mat = np.eye(ctx.basis.K) \
                    + (a_kk * dt / eps2) * (ctx.static.M + mats.C)
                r_k = np.linalg.solve(a_mat[:, None], rhs_r[..., None])[..., 0]
            else:
                a_mat = ctx.static.M + mats.C
                r_k = np.linalg.solve(a_mat[:, None], relax_src[..., None])[..., 0]
        except np.linalg.LinAlgError as exc:
            raise NumericalStateError(
                f"relaxation solve failed at stage {k}: {exc}") from exc

        # odd parity uses the freshly solved even parity
        rp = _pad(r_k, 1, 1.0)
        dc_r = (rp[2:] - rp[:-2]) / (2.0 * dx)
        ep = np.einsum("iqkl,il->iqk", mats.E, p_k)
        if eps2 > 0.0:
            rhs_j = expl_j - dt * a_kk / eps2 * ((1.0 - eps2 * phi) * v * dc_r - ep)
            j_k = np.linalg.solve(a_mat[:, None], rhs_j[..., None])[..., 0]
        else:
            j_k = np.linalg.solve(a_mat[:, None],
                                  (ep - v * dc_r)[..., None])[..., 0]

        if not (np.all(np.isfinite(r_k)) and np.all(np.isfinite(j_k))):
            raise NumericalStateError(f"non-finite state after stage {k}")

        gamma, beta = minmod_slopes(r_k, j_k, phi, grid)
        rp = _pad(r_k, 1, 1.0)
        jp = _pad(j_k, 1, -1.0)
        dc_j = (jp[2:] - jp[:-2]) / (2.0 * dx)
        d2_r = rp[2:] - 2.0 * r_k + rp[:-2]
        d2_j = jp[2:] - 2.0 * j_k + jp[:-2]
        dc_r = (rp[2:] - rp[:-2]) / (2.0 * dx)
        slope_sym = gamma[1:-1] - gamma[:-2] + beta[2:] - beta[1:-1]
        slope_asym = gamma[1:-1] - gamma[:-2] - beta[2:] + beta[1:-1]

        f1[k] = (-v * dc_j + v * sqrt_phi * d2_r / (2.0 * dx)
                 - 0.25 * v * sqrt_phi * slope_sym
                 - mu * fbar * ldiff_k[:, None, :])
        # stiff stage derivatives recovered from the solves (stable at small eps)
        f2[k] = ((r_k - expl_r) / (a_kk * dt)
                 + mu * fbar * (ldiff_k - ldiff_lag)[:, None, :])
        g1[k] = (-v * phi * dc_r + v * sqrt_phi * d2_j / (2.0 * dx)
                 - 0.25 * v * phi * slope_asym)
        g2[k] = (j_k - expl_j) / (a_kk * dt)
        g_lag = mats.G_tilde

    r_new = r_n.copy()
    j_new = j_n.copy()
    for k in range(n_stages):
        r_new += dt * (tab.b_exp[k] * f1[k] + tab.b_imp[k] * f2[k])
        j_new += dt * (tab.b_exp[k] * g1[k] + tab.b_imp[k] * g2[k])
    return KineticState(r_hat=r_new, j_hat=j_new, t=state.t + dt)
