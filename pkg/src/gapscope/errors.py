"""Exception types shared across the library.

Every failure mode raised on purpose derives from :class:`GapscopeError`,
so callers (and the CLI) can distinguish domain failures from bugs.
"""

from __future__ import annotations

__all__ = [
    "GapscopeError",
    "InvalidParameterError",
    "SizeLimitError",
    "SamplingFailureError",
    "InvalidMatrixError",
    "NumericalFailureError",
    "DisconnectedGraphError",
    "DisconnectedMatrixError",
    "DegenerateConfigurationError",
    "DisconnectedSupportError",
    "InfiniteBoundError",
    "NormalizationError",
]


class GapscopeError(Exception):
    """Base class for all library-raised failures."""


class InvalidParameterError(GapscopeError, ValueError):
    """An argument is outside its documented domain."""


class SizeLimitError(GapscopeError):
    """A requested object exceeds the configured dense-size guard."""


class SamplingFailureError(GapscopeError):
    """A rejection sampler exhausted its attempt budget."""


class InvalidMatrixError(GapscopeError, ValueError):
    """A matrix fails symmetry / stochasticity / positivity checks."""


class NumericalFailureError(GapscopeError):
    """An iterative routine failed to converge or lost accuracy."""


class DisconnectedGraphError(GapscopeError):
    """A graph metric was requested for a disconnected graph."""


class DisconnectedMatrixError(GapscopeError):
    """A stochastic matrix has no spectral gap (second eigenvalue at 1)."""


class DegenerateConfigurationError(GapscopeError):
    """All points of a configuration coincide (no distance scale)."""


class DisconnectedSupportError(GapscopeError):
    """A matrix places no weight on any separated pair of points."""


class InfiniteBoundError(GapscopeError):
    """A quantity is infinite for the given inputs (e.g. no spectral gap)."""


class NormalizationError(GapscopeError, ValueError):
    """An input violates a required normalization (e.g. min distance >= 1)."""
