"""Embeddings of finite metrics into normed spaces.

Baseline constructions (the isometric coordinate embedding into l_inf and
the equilateral simplex embedding), a full distortion report for arbitrary
point images, and a multi-restart optimizer for three objectives:
bi-Lipschitz distortion, average distortion, and the all-pairs spread
achievable at unit edge energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import (
    InvalidParameterError,
    NormalizationError,
    NumericalFailureError,
)
from .graphs import StochasticMatrix
from .metrics import FiniteMetric
from .norms import NormedSpace, lp_space, pairwise_norm_gradients, pairwise_norms
from .optimize import OptimizerConfig, restart_rng
from .poincare import PointConfig, poincare_ratio

__all__ = [
    "Embedding",
    "EmbeddingReport",
    "evaluate_embedding",
    "frechet_embedding",
    "simplex_embedding",
    "optimize_embedding",
    "OBJECTIVES",
]

OBJECTIVES = ("distortion", "average_distortion", "pairs_rms_subject_to_edge_rms")

#: Sentinel objective value for iterates with coincident image points.
_DEGENERATE = 1e18
#: Log-sum-exp temperature schedule endpoints for the smoothed objectives.
_T_START, _T_END = 1.0, 1e-3
_T_PHASES = 8
#: Derivative-free polish is attempted only on problems this small.
_POLISH_MAX_VARS = 64


@dataclass(frozen=True)
class Embedding:
    """A source metric together with its image configuration."""

    source: FiniteMetric
    image: PointConfig

    def __post_init__(self) -> None:
        if self.source.n != self.image.n:
            raise InvalidParameterError(
                f"source has {self.source.n} points, image has {self.image.n}"
            )

    @property
    def n(self) -> int:
        return self.source.n


@dataclass(frozen=True)
class EmbeddingReport:
    """Lipschitz / contraction / distortion summary of an embedding.

    ``average_distortion`` is the Lipschitz constant after rescaling the
    image so its pair-distance sum matches the source's (the least
    constant for which the rescaled map is noncontractive on average).
    ``edge_rms`` / ``pairs_rms`` are filled only when a matrix was
    supplied.  Coincident image points surface as infinite contraction,
    never as an exception.
    """

    lipschitz: float
    contraction: float
    distortion: float
    average_distortion: float
    edge_rms: float | None = None
    pairs_rms: float | None = None

    def __post_init__(self) -> None:
        if not (self.distortion >= 1.0 - 1e-9):
            raise InvalidParameterError(f"distortion {self.distortion} below 1")
        if not (self.average_distortion >= 1.0 - 1e-9):
            raise InvalidParameterError(
                f"average distortion {self.average_distortion} below 1"
            )
        if self.average_distortion > self.distortion * (1.0 + 1e-12):
            raise InvalidParameterError("average distortion exceeds distortion")


def _image_distances(e: Embedding) -> np.ndarray:
    pts = e.image.points
    diffs = pts[:, None, :] - pts[None, :, :]
    return pairwise_norms(e.image.space, diffs)


def evaluate_embedding(e: Embedding, a: StochasticMatrix | None = None) -> EmbeddingReport:
    """Full report for one embedding; see :class:`EmbeddingReport`."""
    if a is not None and a.n != e.n:
        raise InvalidParameterError(f"matrix has n={a.n}, embedding has n={e.n}")
    n = e.n
    dist = e.source.dist
    img = _image_distances(e)
    off = ~np.eye(n, dtype=bool)
    if n < 2:
        return EmbeddingReport(
            lipschitz=1.0, contraction=1.0, distortion=1.0, average_distortion=1.0
        )
    d_off = dist[off]
    n_off = img[off]
    lipschitz = float(np.max(n_off / d_off))
    if np.any(n_off == 0.0):
        contraction = math.inf
    else:
        contraction = float(np.max(d_off / n_off))
    distortion = lipschitz * contraction if lipschitz > 0.0 else math.inf
    sum_d = float(d_off.sum())
    sum_n = float(n_off.sum())
    average = lipschitz * sum_d / sum_n if sum_n > 0.0 else math.inf
    edge_rms = pairs_rms = None
    if a is not None:
        edge_rms = float(math.sqrt((a.a * img**2).sum() / n))
        pairs_rms = float(math.sqrt((img**2).sum() / n**2))
    return EmbeddingReport(
        lipschitz=lipschitz,
        contraction=contraction,
        distortion=distortion,
        average_distortion=average,
        edge_rms=edge_rms,
        pairs_rms=pairs_rms,
    )


def frechet_embedding(m: FiniteMetric) -> Embedding:
    """Isometric coordinate embedding into l_inf of dimension n-1.

    Point i maps to its distance vector to the first n-1 points; the max
    coordinate difference always equals the source distance exactly.
    """
    if m.n < 2:
        raise InvalidParameterError("coordinate embedding needs at least 2 points")
    coords = np.array(m.dist[:, : m.n - 1])
    space = lp_space(m.n - 1, math.inf)
    return Embedding(source=m, image=PointConfig(points=coords, space=space))


def simplex_embedding(m: FiniteMetric) -> Embedding:
    """Equilateral embedding onto scaled standard basis vectors in l_2^n.

    All image distances equal the source diameter, so the distortion never
    exceeds the diameter provided distances are at least 1; smaller
    distances must be rescaled by the caller first.
    """
    if m.n < 2:
        raise InvalidParameterError("simplex embedding needs at least 2 points")
    off = ~np.eye(m.n, dtype=bool)
    if float(np.min(m.dist[off])) < 1.0:
        raise NormalizationError(
            "simplex embedding needs all distances >= 1; rescale the metric"
        )
    pts = (m.diameter / math.sqrt(2.0)) * np.eye(m.n)
    return Embedding(source=m, image=PointConfig(points=pts, space=lp_space(m.n, 2.0)))


def _log_ratios(dist: np.ndarray, img: np.ndarray, off: np.ndarray) -> np.ndarray | None:
    """log(img/dist) on off-diagonal pairs; None if any image pair coincides."""
    n_off = img[off]
    if np.any(n_off <= 0.0):
        return None
    return np.log(n_off / dist[off])


def _softmax_weights(u: np.ndarray, temp: float) -> np.ndarray:
    z = (u - u.max()) / temp
    w = np.exp(z)
    return w / w.sum()


def _smoothed_objective_and_gradient(
    objective: str,
    dist: np.ndarray,
    space: NormedSpace,
    x: np.ndarray,
    temp: float,
):
    """Annealed surrogate loss and its gradient for the two distortion
    objectives.  Works on ordered pairs; norm symmetry makes both
    orderings contribute equally."""
    n = x.shape[0]
    off = ~np.eye(n, dtype=bool)
    diffs = x[:, None, :] - x[None, :, :]
    img = pairwise_norms(space, diffs)
    u = _log_ratios(dist, img, off)
    if u is None:
        return _DEGENERATE, None
    grads = pairwise_norm_gradients(space, diffs)
    inv_img = np.zeros_like(img)
    inv_img[off] = 1.0 / img[off]

    if objective == "distortion":
        w_plus = _softmax_weights(u, temp)
        w_minus = _softmax_weights(-u, temp)
        value = float(
            temp * math.log(np.exp((u - u.max()) / temp).sum()) + u.max()
            + temp * math.log(np.exp((-u - (-u).max()) / temp).sum()) + (-u).max()
        )
        coef = np.zeros_like(img)
        coef[off] = w_plus - w_minus
    else:  # average_distortion surrogate: soft Lipschitz + exact sum terms
        w_plus = _softmax_weights(u, temp)
        sum_n = float(img[off].sum())
        sum_d = float(dist[off].sum())
        value = float(
            temp * math.log(np.exp((u - u.max()) / temp).sum()) + u.max()
            - math.log(sum_n) + math.log(sum_d)
        )
        coef = np.zeros_like(img)
        coef[off] = w_plus
        coef[off] -= img[off] / sum_n
    # d value / d x_k = sum_j (coef_kj + coef_jk) * inv_img_kj * g(x_k - x_j)
    sym = (coef + coef.T) * inv_img
    grad = np.einsum("kj,kjd->kd", sym, grads)
    return value, grad


def _exact_objective(objective: str, dist: np.ndarray, space: NormedSpace, x: np.ndarray) -> float:
    n = x.shape[0]
    off = ~np.eye(n, dtype=bool)
    diffs = x[:, None, :] - x[None, :, :]
    img = pairwise_norms(space, diffs)
    u = _log_ratios(dist, img, off)
    if u is None:
        return _DEGENERATE
    if objective == "distortion":
        return float(u.max() - u.min())
    return float(u.max() - math.log(img[off].sum()) + math.log(dist[off].sum()))


def _center_scale(x: np.ndarray) -> np.ndarray:
    x = x - x.mean(axis=0, keepdims=True)
    scale = float(np.sqrt((x**2).sum() / x.shape[0]))
    return x / scale if scale > 0.0 else x


def _minimize_distortion_objective(
    m: FiniteMetric, space: NormedSpace, objective: str, opt: OptimizerConfig
) -> np.ndarray:
    n, dim = m.n, space.dim
    dist = m.dist
    temps = np.geomspace(_T_START, _T_END, _T_PHASES)
    steps_per_phase = max(1, opt.steps // _T_PHASES)
    best_val = math.inf
    best_x: np.ndarray | None = None
    for r in range(opt.restarts):
        rng = restart_rng(opt, r)
        x = _center_scale(rng.standard_normal((n, dim)) * float(m.diameter))
        for temp in temps:
            val, grad = _smoothed_objective_and_gradient(objective, dist, space, x, temp)
            if grad is None:
                x = x + 1e-8 * rng.standard_normal((n, dim))
                val, grad = _smoothed_objective_and_gradient(objective, dist, space, x, temp)
                if grad is None:
                    break
            step = opt.step_size
            for _ in range(steps_per_phase):
                gn = float(np.linalg.norm(grad))
                if gn == 0.0 or step < 1e-15:
                    break
                cand = x - (step / gn) * grad
                cand_val, cand_grad = _smoothed_objective_and_gradient(
                    objective, dist, space, cand, temp
                )
                if cand_grad is None:
                    step *= opt.shrink
                    continue
                if not math.isfinite(cand_val):
                    raise NumericalFailureError("embedding descent diverged")
                if cand_val < val:
                    drop = (val - cand_val) / max(abs(val), 1e-300)
                    x, val, grad = cand, cand_val, cand_grad
                    if drop < opt.tol:
                        break
                else:
                    step *= opt.shrink
        exact = _exact_objective(objective, dist, space, x)
        if exact < best_val:
            best_val = exact
            best_x = x
    if best_x is None:  # pragma: no cover - every restart degenerate
        raise NumericalFailureError("no restart produced a usable embedding")
    if n * dim <= _POLISH_MAX_VARS:
        # derivative-free refinement of the winner on the exact objective
        res = minimize(
            lambda flat: _exact_objective(objective, dist, space, flat.reshape(n, dim)),
            best_x.ravel(),
            method="Nelder-Mead",
            options={"maxiter": 4000, "xatol": 1e-10, "fatol": 1e-12},
        )
        if math.isfinite(res.fun) and res.fun < best_val:
            best_x = res.x.reshape(n, dim)
    return best_x


def optimize_embedding(
    m: FiniteMetric,
    space: NormedSpace,
    objective: str,
    a: StochasticMatrix | None = None,
    opt: OptimizerConfig | None = None,
) -> tuple[Embedding, EmbeddingReport]:
    """Search for a good embedding of ``m`` into ``space``.

    Objectives: "distortion" and "average_distortion" run multi-restart
    subgradient descent on a log-sum-exp surrogate whose temperature
    anneals from 1.0 to 1e-3, then a bounded derivative-free polish of
    the winner on the exact objective (small problems only).
    "pairs_rms_subject_to_edge_rms" needs the matrix ``a``: it maximizes
    the all-pairs RMS at unit edge RMS, whose square is exactly the
    2-Poincare ratio, and rescales the winner onto the constraint.
    Deterministic for a given ``opt.seed``; winners are picked by
    (objective value, restart index).
    """
    if objective not in OBJECTIVES:
        raise InvalidParameterError(
            f"unknown objective {objective!r}; expected one of {OBJECTIVES}"
        )
    if m.n < 2:
        raise InvalidParameterError("optimization needs at least 2 points")
    if opt is None:
        opt = OptimizerConfig()

    if objective == "pairs_rms_subject_to_edge_rms":
        if a is None:
            raise InvalidParameterError("the constrained objective needs the matrix")
        from .poincare import maximize_poincare_ratio

        if a.n != m.n:
            raise InvalidParameterError(f"matrix has n={a.n}, metric has n={m.n}")
        cfg, _rep = maximize_poincare_ratio(a, space, 2.0, opt)
        pts = np.array(cfg.points)
        edge = float(math.sqrt((a.a * pairwise_norms(space, pts[:, None, :] - pts[None, :, :]) ** 2).sum() / m.n))
        if edge > 0.0:
            pts /= edge
        emb = Embedding(source=m, image=PointConfig(points=pts, space=space))
        return emb, evaluate_embedding(emb, a)

    best = _minimize_distortion_objective(m, space, objective, opt)
    emb = Embedding(source=m, image=PointConfig(points=best, space=space))
    return emb, evaluate_embedding(emb, a)
