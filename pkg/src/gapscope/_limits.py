"""Dense-size guard.

Everything in this library works with dense n x n arrays, so generators and
solvers refuse sizes past a configurable cap instead of thrashing memory.
"""

from __future__ import annotations

import os

from .errors import InvalidParameterError, SizeLimitError

DEFAULT_MAX_N = 20000

_ENV_VAR = "GAPSCOPE_MAX_N"


def max_n() -> int:
    """Current vertex-count cap (env var GAPSCOPE_MAX_N overrides the default)."""
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidParameterError(f"{_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InvalidParameterError(f"{_ENV_VAR} must be positive, got {value}")
    return value


def check_size(n: int, what: str = "n") -> None:
    """Raise SizeLimitError if ``n`` exceeds the configured cap."""
    cap = max_n()
    if n > cap:
        raise SizeLimitError(f"{what}={n} exceeds the size cap {cap} (set {_ENV_VAR} to override)")
