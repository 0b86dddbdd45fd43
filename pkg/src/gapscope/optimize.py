"""Shared configuration for the multi-restart search routines."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

__all__ = ["OptimizerConfig", "restart_rng"]


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for the restart-based ascent/descent loops.

    ``step_size`` is multiplied by ``shrink`` whenever a step fails to
    improve; a restart stops once the relative objective change falls
    below ``tol`` (or the step underflows).
    """

    restarts: int = 20
    steps: int = 2000
    step_size: float = 0.1
    shrink: float = 0.5
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise InvalidParameterError(f"restarts must be >= 1, got {self.restarts}")
        if self.steps < 1:
            raise InvalidParameterError(f"steps must be >= 1, got {self.steps}")
        if not (0.0 < self.step_size < float("inf")):
            raise InvalidParameterError(f"step_size must be positive, got {self.step_size}")
        if not (0.0 < self.shrink < 1.0):
            raise InvalidParameterError(f"shrink must be in (0, 1), got {self.shrink}")
        if not (self.tol >= 0.0):
            raise InvalidParameterError(f"tol must be >= 0, got {self.tol}")


def restart_rng(cfg: OptimizerConfig, index: int) -> np.random.Generator:
    """Independent generator for restart ``index``.

    Spawned from the config seed so restarts can run in any order (or in
    parallel) and still see identical streams.
    """
    return np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(index,)))
