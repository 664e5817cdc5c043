"""Exception taxonomy shared across the package.

Configuration problems (bad model parameters, malformed experiment configs)
are distinguished from numerical failures (non-finite quadrature samples,
root finder stagnation, Gram matrices losing positivity) so the command line
driver can map them to distinct exit codes.
"""

from __future__ import annotations


class ConfigurationError(ValueError):
    """A requested model / space / experiment combination violates an invariant."""


class UnsupportedConfigurationError(ConfigurationError):
    """The combination is recognised but deliberately rejected (not a typo)."""


class DomainError(ValueError):
    """A point or region falls outside the chart it was addressed to."""


class NumericsError(ArithmeticError):
    """A numerical routine produced garbage (NaN/Inf) or failed to converge."""


class QuadratureError(NumericsError):
    """Non-finite integrand sample; carries the offending node."""

    def __init__(self, message: str, node: complex | None = None):
        super().__init__(message)
        self.node = node


class IllConditionedError(NumericsError):
    """Cholesky pivot loss while orthonormalizing; carries the pivot index."""

    def __init__(self, message: str, pivot: int):
        super().__init__(message)
        self.pivot = pivot


class RootFindingError(NumericsError):
    """The simultaneous root iteration missed its residual target."""

    def __init__(self, message: str, worst_residual: float):
        super().__init__(message)
        self.worst_residual = worst_residual


class UnsupportedSupportError(ValueError):
    """A current operation needs compact support in the disk chart and lacks it."""


class ExperimentError(NumericsError):
    """Too many per-sample failures inside a Monte Carlo experiment."""
