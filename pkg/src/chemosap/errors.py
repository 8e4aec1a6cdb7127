"""Exception taxonomy shared by all solver modules."""


class ChemoSapError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(ChemoSapError):
    """Invalid user-facing configuration (bad grids, malformed config file, ...)."""


class ContractViolation(ChemoSapError):
    """An internal API was called with inconsistent arguments (shape mismatch etc.)."""


class NumericalStateError(ChemoSapError):
    """The numerical state became unusable (non-finite fields, singular solve)."""
