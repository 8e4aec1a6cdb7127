"""Turning-kernel sources and the state-dependent gPC coupling matrices.

Two kernels are supported: the nonlocal one, which senses the chemoattractant
at a finite offset eps*v through the positive part (s(x + eps*v) - s(x))_+,
and the local gradient-sensing one built from |ds/dx|.  Nonlinearities
(positive part, modulus) are evaluated pointwise at the z-quadrature nodes on
the reconstructed field and then projected back, i.e. collocation in z.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .chemo import ChemoField
from .gpc import GpcBasis, RandomCoefficient, project_function
from .grids import SpatialGrid, VelocityQuad

__all__ = [
    "ModelKind",
    "KernelMatrices",
    "delta_eps_s",
    "parity_R",
    "parity_J",
    "assemble_kernel_matrices",
    "assemble_drift_matrix",
]


class ModelKind(enum.Enum):
    NONLOCAL = "nonlocal"
    LOCAL = "local"


@dataclass(frozen=True)
class KernelMatrices:
    B: np.ndarray        # (n_cells, n_v, K, K)
    C: np.ndarray        # (n_cells, K, K)
    E: np.ndarray        # (n_cells, n_v, K, K)
    G_tilde: np.ndarray  # (n_cells, K, K)


def _centered_slopes(values: np.ndarray, grid: SpatialGrid) -> np.ndarray:
    """Centered-difference cell slopes, zero in the wall cells (no-flux)."""
    ds = np.zeros_like(values)
    ds[1:-1] = (values[2:] - values[:-2]) / (2.0 * grid.dx)
    return ds


def _shift_eval(values: np.ndarray, slopes: np.ndarray, offset: float,
                grid: SpatialGrid) -> np.ndarray:
    """Evaluate the piecewise-linear reconstruction value + slope * (x - x_i)
    at the shifted points x_i + offset.

    Cell slopes are the centered differences, so a sub-cell shift sees the
    same gradient from either side; this keeps the odd parity of the shifted
    differences consistent with the drift matrices for eps*v below the grid
    scale.  Evaluation points beyond a wall are reflected back inside (even
    extension).  Extra axes of ``values`` (e.g. z nodes) ride along.
    """
    x = grid.centers + offset
    # one reflection suffices for |offset| <= 2*x_max
    x = np.where(x > grid.x_max, 2.0 * grid.x_max - x, x)
    x = np.where(x < -grid.x_max, -2.0 * grid.x_max - x, x)
    idx = np.clip(((x + grid.x_max) / grid.dx).astype(int), 0, grid.n_cells - 1)
    delta = x - grid.centers[idx]
    delta = delta.reshape(delta.shape + (1,) * (values.ndim - 1))
    return values[idx] + delta * slopes[idx]


def delta_eps_s(s: np.ndarray, eps: float, v: float, grid: SpatialGrid) -> np.ndarray:
    """(s(x + eps*v) - s(x))_+ on the grid, with reflecting walls."""
    s = np.asarray(s, dtype=float)
    return np.maximum(_shift_eval(s, _centered_slopes(s, grid), eps * v, grid) - s,
                      0.0)


def parity_R(field_plus: np.ndarray, field_minus: np.ndarray) -> np.ndarray:
    """Even parity: half-sum of the values at +v and -v."""
    return 0.5 * (field_plus + field_minus)


def parity_J(field_plus: np.ndarray, field_minus: np.ndarray, eps: float) -> np.ndarray:
    """Odd parity scaled by 1/eps: (g(v) - g(-v)) / (2 eps)."""
    return (field_plus - field_minus) / (2.0 * eps)


def _weighted_outer(weights: np.ndarray, basis: GpcBasis) -> np.ndarray:
    """Sum_j weights[..., j] Phi(z_j) Phi(z_j)^T with the z-quadrature folded in.

    ``weights`` has the z-node axis last; the result appends two K axes.
    """
    phi = basis.eval_table
    return np.einsum("...j,jk,jl->...kl", weights * basis.z_weights, phi, phi,
                     optimize=True)


def assemble_drift_matrix(chemo: ChemoField, basis: GpcBasis) -> np.ndarray:
    """G-tilde: per-cell K x K matrices of ds/dx weighted mode products."""
    ds_nodes = basis.reconstruct(chemo.ds_hat)  # (n_cells, n_znodes)
    return _weighted_outer(ds_nodes, basis)


def assemble_kernel_matrices(
    model: ModelKind,
    chemo: ChemoField,
    basis: GpcBasis,
    coeff: RandomCoefficient,
    eps: float,
    grid: SpatialGrid,
    vel: VelocityQuad,
) -> KernelMatrices:
    """State-dependent coupling matrices for one stage of the integrator.

    The velocity-integrated damping source (matrix C) is assembled from the
    same velocity quadrature as the even source, so that the moment identity
    <B> = C holds to machine precision; the mass-conservation of the stepper
    relies on it.
    """
    s_nodes = basis.reconstruct(chemo.s_hat)    # (n_cells, n_z)
    ds_nodes = basis.reconstruct(chemo.ds_hat)  # (n_cells, n_z)
    alpha = coeff(basis.z_nodes)                # (n_z,)
    n_cells, n_z = s_nodes.shape
    n_v = vel.n_v

    r_src = np.empty((n_cells, n_v, n_z))
    j_src = np.empty((n_cells, n_v, n_z))

    if model is ModelKind.NONLOCAL:
        for q, v in enumerate(vel.nodes):
            if eps > 0.0:
                d_plus = np.maximum(
                    _shift_eval(s_nodes, ds_nodes, eps * v, grid) - s_nodes, 0.0)
                d_minus = np.maximum(
                    _shift_eval(s_nodes, ds_nodes, -eps * v, grid) - s_nodes, 0.0)
                r_src[:, q] = parity_R(d_plus, d_minus)
                j_src[:, q] = parity_J(d_plus, d_minus, eps)
            else:
                # exact eps -> 0 limit of the reconstructed positive parts:
                # the even source vanishes, the odd one carries (v/2) ds/dx
                r_src[:, q] = 0.0
                j_src[:, q] = 0.5 * v * ds_nodes
    elif model is ModelKind.LOCAL:
        # collocation projection of the modulus: truncate |ds/dx| to the basis
        xi = project_function(np.abs(ds_nodes), basis)
        abs_ds = basis.reconstruct(xi)
        for q, v in enumerate(vel.nodes):
            r_src[:, q] = 0.5 * eps * v * abs_ds
            j_src[:, q] = 0.5 * v * ds_nodes
    else:
        raise ValueError(f"unknown model kind {model!r}")

    c_src = 2.0 * np.einsum("q,iqj->ij", vel.weights, r_src)

    b = _weighted_outer(alpha * r_src, basis)
    c = _weighted_outer(alpha * c_src, basis)
    e = _weighted_outer(alpha * j_src, basis)
    g_tilde = _weighted_outer(ds_nodes, basis)
    return KernelMatrices(B=b, C=c, E=e, G_tilde=g_tilde)
