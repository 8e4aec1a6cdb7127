"""Spatial grid, Gauss-Legendre quadrature and the half-interval velocity rule.

The spatial grid is cell-centered on [-x_max, x_max]; no node sits on the
boundary, walls are handled through ghost cells by the integrators.  The
velocity space V = [-v_max, v_max] is discretized by a Gauss-Legendre rule
on the positive half (0, v_max]; even/odd parity fields are stored on the
positive nodes only and moments use ``rho = 2 * sum(w_q * r(v_q))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "SpatialGrid",
    "VelocityQuad",
    "make_spatial_grid",
    "gauss_legendre",
    "half_velocity_quadrature",
]


@dataclass(frozen=True)
class SpatialGrid:
    x_max: float
    n_cells: int
    dx: float
    centers: np.ndarray


@dataclass(frozen=True)
class VelocityQuad:
    v_max: float
    n_v: int
    nodes: np.ndarray
    weights: np.ndarray

    def moment(self, r: np.ndarray, axis: int = -1) -> np.ndarray:
        """Velocity integral over the full interval of an even-parity field.

        ``r`` carries values on the positive nodes along ``axis``; the even
        extension doubles the half-interval quadrature.
        """
        w = self.weights
        shape = [1] * r.ndim
        shape[axis] = w.size
        return 2.0 * np.sum(r * w.reshape(shape), axis=axis)


def make_spatial_grid(x_max: float, n_cells: int) -> SpatialGrid:
    """Uniform cell-centered grid on [-x_max, x_max]."""
    if not x_max > 0.0:
        raise ConfigurationError(f"x_max must be positive, got {x_max}")
    if n_cells < 4:
        raise ConfigurationError(f"n_cells must be at least 4, got {n_cells}")
    dx = 2.0 * x_max / n_cells
    centers = -x_max + (np.arange(n_cells) + 0.5) * dx
    return SpatialGrid(x_max=x_max, n_cells=n_cells, dx=dx, centers=centers)


def gauss_legendre(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """n-point Gauss-Legendre rule on (a, b), nodes ascending.

    Nodes are computed by Newton iteration on the Legendre polynomial P_n
    (convergence tolerance 1e-15), then mapped affinely from (-1, 1).
    The rule is exact for polynomials of degree <= 2n - 1.
    """
    if n < 1:
        raise ConfigurationError(f"quadrature needs n >= 1, got {n}")
    if not a < b:
        raise ConfigurationError(f"invalid interval ({a}, {b})")

    # Chebyshev initial guesses, descending in x; refined by Newton.
    i = np.arange(1, n + 1)
    x = np.cos(math.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p_prev = np.zeros_like(x)
        p = np.ones_like(x)
        for k in range(1, n + 1):
            p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
        dp = n * (x * p - p_prev) / (x * x - 1.0)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    for k in range(1, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    order = np.argsort(x)
    x, w = x[order], w[order]
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


def half_velocity_quadrature(n_v: int, v_max: float) -> VelocityQuad:
    """Gauss-Legendre rule on the positive velocity half-interval (0, v_max]."""
    if n_v < 2:
        raise ConfigurationError(f"n_v must be at least 2, got {n_v}")
    nodes, weights = gauss_legendre(n_v, 0.0, v_max)
    return VelocityQuad(v_max=v_max, n_v=n_v, nodes=nodes, weights=weights)
