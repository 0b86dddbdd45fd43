"""Poincare-type ratios of point configurations under a stochastic matrix.

For points x_1..x_n in a normed space and exponent p, the observed ratio is

    ((1/n^2) sum_ij |x_i - x_j|^p) / ((1/n) sum_ij a_ij |x_i - x_j|^p),

a certified lower bound on the matrix's nonlinear spectral gap for that
space and exponent.  On the real line with p = 2 the supremum is exactly
``1/(1 - lambda_2)``, which :func:`gamma_line_exact` returns and the
adversarial maximizer is benchmarked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateConfigurationError,
    DisconnectedMatrixError,
    DisconnectedSupportError,
    InvalidParameterError,
    NumericalFailureError,
)
from .graphs import StochasticMatrix
from .norms import NormedSpace, pairwise_norm_gradients, pairwise_norms
from .optimize import OptimizerConfig, restart_rng
from .spectral import second_eigenvalue

__all__ = [
    "PointConfig",
    "PoincareReport",
    "poincare_ratio",
    "gamma_line_exact",
    "maximize_poincare_ratio",
]

#: lambda_2 at least this close to 1 means the ratio sup is unbounded.
GAP_FLOOR = 1e-12


@dataclass(frozen=True)
class PointConfig:
    """n points living in a common normed space."""

    points: np.ndarray
    space: NormedSpace
    n: int = field(init=False)

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise InvalidParameterError("points must be an (n, dim) array")
        if pts.shape[1] != self.space.dim:
            raise InvalidParameterError(
                f"points have dimension {pts.shape[1]}, space has {self.space.dim}"
            )
        if pts.shape[0] < 1:
            raise InvalidParameterError("need at least one point")
        if not np.all(np.isfinite(pts)):
            raise InvalidParameterError("points contain non-finite entries")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "n", pts.shape[0])


@dataclass(frozen=True)
class PoincareReport:
    """All-pairs vs edge p-th-moment averages and their ratio."""

    ratio: float
    numerator: float
    denominator: float
    exponent: float

    def __post_init__(self) -> None:
        if not (self.ratio >= 0.0):
            raise InvalidParameterError(f"ratio must be >= 0, got {self.ratio}")
        if abs(self.ratio * self.denominator - self.numerator) > 1e-12 * max(
            self.numerator, self.denominator, 1e-300
        ):
            raise InvalidParameterError("ratio does not match numerator/denominator")


def _pair_distance_powers(cfg: PointConfig, p: float) -> np.ndarray:
    diffs = cfg.points[:, None, :] - cfg.points[None, :, :]
    dist = pairwise_norms(cfg.space, diffs)
    with np.errstate(divide="ignore"):
        powed = np.where(dist > 0.0, dist, 1.0) ** p
    return np.where(dist > 0.0, powed, 0.0)


def poincare_ratio(a: StochasticMatrix, cfg: PointConfig, p: float) -> PoincareReport:
    """The observed ratio for one configuration (see module docs).

    Raises a degenerate-configuration error when all points coincide, and
    a disconnected-support error when the points are constant on the
    support of ``a`` without being globally constant (edge average zero,
    pair average positive).
    """
    if not (p > 0.0):
        raise InvalidParameterError(f"exponent must be > 0, got {p}")
    if a.n != cfg.n:
        raise InvalidParameterError(f"matrix has n={a.n}, configuration has n={cfg.n}")
    powers = _pair_distance_powers(cfg, p)
    numerator = float(powers.sum()) / cfg.n**2
    if numerator == 0.0:
        raise DegenerateConfigurationError("all points coincide")
    denominator = float((a.a * powers).sum()) / cfg.n
    if denominator == 0.0:
        raise DisconnectedSupportError(
            "points are constant on the support of the matrix but not globally"
        )
    return PoincareReport(
        ratio=numerator / denominator,
        numerator=numerator,
        denominator=denominator,
        exponent=p,
    )


def gamma_line_exact(a: StochasticMatrix) -> float:
    """The exact supremum ratio on the real line with p = 2: 1/(1 - lambda_2)."""
    lam = second_eigenvalue(a)
    if lam >= 1.0 - GAP_FLOOR:
        raise DisconnectedMatrixError(f"lambda_2 = {lam} leaves no spectral gap")
    return 1.0 / (1.0 - lam)


def _gauge_fix(space: NormedSpace, x: np.ndarray) -> np.ndarray:
    """Center the configuration and normalize its pairs-RMS to 1."""
    x = x - x.mean(axis=0, keepdims=True)
    diffs = x[:, None, :] - x[None, :, :]
    rms = float(np.sqrt(np.mean(pairwise_norms(space, diffs) ** 2)))
    if rms <= 0.0:
        return x
    return x / rms


def _ratio_and_gradient(a: np.ndarray, space: NormedSpace, p: float, x: np.ndarray):
    n = x.shape[0]
    diffs = x[:, None, :] - x[None, :, :]
    dist = pairwise_norms(space, diffs)
    with np.errstate(divide="ignore"):
        powed = np.where(dist > 0.0, dist, 1.0) ** p
    powed = np.where(dist > 0.0, powed, 0.0)
    s_pairs = float(powed.sum()) / n**2
    s_edge = float((a * powed).sum()) / n
    if s_pairs == 0.0 or s_edge == 0.0:
        return None, None
    ratio = s_pairs / s_edge
    # d/dx_k of sum_ij w_ij dist_ij^p = 2p sum_j w_kj dist_kj^(p-1) g_kj
    # with g_kj a norm subgradient at x_k - x_j (norm symmetry pairs up
    # the (k,j) and (j,k) terms)
    grads = pairwise_norm_gradients(space, diffs)
    with np.errstate(divide="ignore"):
        wpow = np.where(dist > 0.0, dist, 1.0) ** (p - 1.0)
    wpow = np.where(dist > 0.0, wpow, 0.0)
    d_pairs = (2.0 * p / n**2) * np.einsum("kj,kjd->kd", wpow, grads)
    d_edge = (2.0 * p / n) * np.einsum("kj,kj,kjd->kd", a, wpow, grads)
    grad = (d_pairs - ratio * d_edge) / s_edge
    return ratio, grad


def maximize_poincare_ratio(
    a: StochasticMatrix,
    space: NormedSpace,
    p: float,
    opt: OptimizerConfig | None = None,
) -> tuple[PointConfig, PoincareReport]:
    """Adversarial search for a ratio-maximizing configuration.

    Multi-restart normalized-subgradient ascent with step halving on
    non-improvement; configurations are re-centered and rescaled to unit
    pairs-RMS after every step so the scale-invariant objective cannot
    drift.  The returned report comes from re-evaluating the winning
    configuration through :func:`poincare_ratio`.  Winner selection is by
    (ratio, restart index), so the result is deterministic for a given
    seed no matter how restarts are scheduled.
    """
    if opt is None:
        opt = OptimizerConfig()
    if not (p > 0.0):
        raise InvalidParameterError(f"exponent must be > 0, got {p}")
    lam = second_eigenvalue(a)
    if lam >= 1.0 - GAP_FLOOR:
        raise DisconnectedMatrixError(f"lambda_2 = {lam} leaves no spectral gap")
    n, dim = a.n, space.dim
    best_ratio = -1.0
    best_points: np.ndarray | None = None
    for r in range(opt.restarts):
        rng = restart_rng(opt, r)
        x = rng.standard_normal((n, dim))
        x = _gauge_fix(space, x)
        ratio, grad = _ratio_and_gradient(a.a, space, p, x)
        if ratio is None:
            x = x + 1e-8 * rng.standard_normal((n, dim))
            x = _gauge_fix(space, x)
            ratio, grad = _ratio_and_gradient(a.a, space, p, x)
            if ratio is None:
                continue
        step = opt.step_size
        for _ in range(opt.steps):
            gn = float(np.linalg.norm(grad))
            if gn == 0.0 or step < 1e-15:
                break
            cand = _gauge_fix(space, x + (step / gn) * grad)
            cand_ratio, cand_grad = _ratio_and_gradient(a.a, space, p, cand)
            if cand_ratio is None:
                step *= opt.shrink
                continue
            if not np.isfinite(cand_ratio):
                raise NumericalFailureError("ratio ascent diverged to a non-finite value")
            if cand_ratio > ratio:
                improvement = (cand_ratio - ratio) / max(ratio, 1e-300)
                x, ratio, grad = cand, cand_ratio, cand_grad
                if improvement < opt.tol:
                    break
            else:
                step *= opt.shrink
        if ratio > best_ratio:
            best_ratio = ratio
            best_points = x
    if best_points is None:  # pragma: no cover - requires every restart degenerate
        raise NumericalFailureError("no restart produced a usable configuration")
    cfg = PointConfig(points=best_points, space=space)
    return cfg, poincare_ratio(a, cfg, p)
