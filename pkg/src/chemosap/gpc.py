"""Orthonormal polynomial-chaos basis in the random variable z.

Only the one-dimensional case z ~ Uniform[-1, 1] (density 1/2) is built:
the basis consists of normalized Legendre polynomials, so K = N + 1 modes
for max degree N.  The first mode is the constant 1 and carries the mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError, ContractViolation
from .grids import gauss_legendre

__all__ = [
    "GpcBasis",
    "RandomCoefficient",
    "SpectralStatic",
    "build_basis",
    "assemble_weighted_matrix",
    "project_function",
    "mean_std",
    "build_static_matrices",
]


@dataclass(frozen=True)
class GpcBasis:
    order_N: int
    K: int
    z_nodes: np.ndarray
    z_weights: np.ndarray   # include the density 1/2; they sum to 1
    eval_table: np.ndarray  # shape (n_znodes, K): Phi_k(z_j)

    def reconstruct(self, coeffs: np.ndarray) -> np.ndarray:
        """Evaluate sum_k coeffs[..., k] * Phi_k at the stored z nodes."""
        return coeffs @ self.eval_table.T


@dataclass(frozen=True)
class RandomCoefficient:
    """Affine random coefficient a0 + a1*z, strictly positive on [-1, 1]."""

    a0: float
    a1: float

    def __post_init__(self):
        if not self.a0 - abs(self.a1) > 0.0:
            raise ConfigurationError(
                f"coefficient {self.a0} + {self.a1}*z is not positive on [-1, 1]"
            )

    def __call__(self, z):
        return self.a0 + self.a1 * np.asarray(z, dtype=float)


@dataclass(frozen=True)
class SpectralStatic:
    """The z-independent K x K coupling matrices of the projected system."""

    M: np.ndarray        # weighted by alpha(z)
    M_tilde: np.ndarray  # weighted by 1/alpha(z)


def _legendre_table(z: np.ndarray, order_N: int) -> np.ndarray:
    """Normalized Legendre values Phi_k(z), k = 0..N, at the given points."""
    table = np.empty((z.size, order_N + 1))
    p_prev = np.zeros_like(z)
    p = np.ones_like(z)
    table[:, 0] = p
    for k in range(1, order_N + 1):
        p_prev, p = p, ((2 * k - 1) * z * p - (k - 1) * p_prev) / k
        table[:, k] = p
    # normalize: int P_k^2 * (1/2) dz = 1 / (2k + 1)
    norms = np.sqrt(2.0 * np.arange(order_N + 1) + 1.0)
    return table * norms


def build_basis(order_N: int, n_znodes: int | None = None) -> GpcBasis:
    """Normalized Legendre basis with a Gauss-Legendre rule in z.

    The default node count 2K + 8 keeps triple products with affine weights
    exact and leaves headroom for smooth non-polynomial weights.
    """
    if order_N < 0:
        raise ConfigurationError(f"gPC order must be >= 0, got {order_N}")
    K = order_N + 1
    if n_znodes is None:
        n_znodes = 2 * K + 8
    if n_znodes < K:
        raise ConfigurationError(
            f"need at least {K} z-quadrature nodes for order {order_N}, got {n_znodes}"
        )
    nodes, weights = gauss_legendre(n_znodes, -1.0, 1.0)
    weights = 0.5 * weights  # fold in the uniform density
    table = _legendre_table(nodes, order_N)
    return GpcBasis(order_N=order_N, K=K, z_nodes=nodes, z_weights=weights,
                    eval_table=table)


def assemble_weighted_matrix(weight: Callable | np.ndarray, basis: GpcBasis) -> np.ndarray:
    """K x K matrix with entries int w(z) Phi_i Phi_j lambda dz by quadrature."""
    if callable(weight):
        w = np.asarray(weight(basis.z_nodes), dtype=float)
    else:
        w = np.asarray(weight, dtype=float)
    if w.shape != basis.z_nodes.shape:
        raise ContractViolation(
            f"weight values have shape {w.shape}, expected {basis.z_nodes.shape}"
        )
    phi = basis.eval_table
    return phi.T @ (phi * (w * basis.z_weights)[:, None])


def project_function(values_at_znodes: np.ndarray, basis: GpcBasis) -> np.ndarray:
    """Quadrature projection of node values onto the basis (last axis = z)."""
    values = np.asarray(values_at_znodes, dtype=float)
    if values.shape[-1] != basis.z_nodes.size:
        raise ContractViolation(
            f"expected {basis.z_nodes.size} z-node values, got {values.shape[-1]}"
        )
    return values @ (basis.eval_table * basis.z_weights[:, None])


def mean_std(coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Mean and standard deviation of a gPC coefficient vector (last axis = mode)."""
    coeffs = np.asarray(coeffs, dtype=float)
    mean = coeffs[..., 0]
    std = np.sqrt(np.sum(coeffs[..., 1:] ** 2, axis=-1))
    return mean, std


def build_static_matrices(coeff: RandomCoefficient, basis: GpcBasis) -> SpectralStatic:
    """Assemble the alpha- and 1/alpha-weighted static coupling matrices."""
    m = assemble_weighted_matrix(coeff, basis)
    m_tilde = assemble_weighted_matrix(lambda z: 1.0 / coeff(z), basis)
    return SpectralStatic(M=m, M_tilde=m_tilde)
