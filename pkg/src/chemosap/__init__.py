"""Stochastic asymptotic-preserving solver for 1D kinetic chemotaxis with
random inputs, its Keller-Segel diffusion limit, and a collocation oracle."""

from .config import Peak, SimConfig, parse_config
from .errors import (ChemoSapError, ConfigurationError, ContractViolation,
                     NumericalStateError)
from .gpc import GpcBasis, RandomCoefficient, build_basis, mean_std
from .grids import make_spatial_grid, half_velocity_quadrature
from .runner import build_initial, diagnostics, run_simulation

__version__ = "0.1.0"

__all__ = [
    "Peak", "SimConfig", "parse_config",
    "ChemoSapError", "ConfigurationError", "ContractViolation",
    "NumericalStateError",
    "GpcBasis", "RandomCoefficient", "build_basis", "mean_std",
    "make_spatial_grid", "half_velocity_quadrature",
    "build_initial", "diagnostics", "run_simulation",
    "__version__",
]
