"""Finite metric spaces, graph metrics, and the ball-growth distance bound."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import DisconnectedGraphError, InvalidParameterError
from .graphs import RegularGraph

__all__ = [
    "FiniteMetric",
    "shortest_path_metric",
    "counting_lower_bound",
    "tree_ball_size",
]

#: Exhaustive triangle-inequality validation up to this size; sampled beyond.
EXHAUSTIVE_TRIANGLE_N = 300
SAMPLED_TRIPLES = 100_000


@dataclass(frozen=True)
class FiniteMetric:
    """A metric on points ``0 .. n-1`` given by its distance matrix.

    ``avg_distance`` is the mean over all ordered pairs including i == j,
    i.e. ``dist.sum() / n**2``.

    The constructor validates symmetry, zero diagonal, positivity off the
    diagonal, and the triangle inequality (exhaustively for n <= 300, on
    100000 deterministically sampled triples beyond that).
    """

    dist: np.ndarray
    n: int = field(init=False)
    diameter: float = field(init=False)
    avg_distance: float = field(init=False)

    def __post_init__(self) -> None:
        d = np.array(self.dist, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise InvalidParameterError(f"distance matrix must be square, got shape {d.shape}")
        n = d.shape[0]
        if n < 1:
            raise InvalidParameterError("metric needs at least one point")
        if not np.all(np.isfinite(d)):
            raise InvalidParameterError("distance matrix contains non-finite entries")
        if float(np.max(np.abs(d - d.T))) > 1e-9:
            raise InvalidParameterError("distance matrix is not symmetric")
        d = (d + d.T) / 2.0
        if float(np.max(np.abs(np.diag(d)))) > 1e-12:
            raise InvalidParameterError("diagonal of a distance matrix must be zero")
        np.fill_diagonal(d, 0.0)
        off = d[~np.eye(n, dtype=bool)]
        if off.size and float(off.min()) <= 0.0:
            raise InvalidParameterError("off-diagonal distances must be strictly positive")
        diameter = float(d.max()) if n > 1 else 0.0
        slack = 1e-9 * max(1.0, diameter)
        if n <= EXHAUSTIVE_TRIANGLE_N:
            for mid in range(n):
                through = d[:, mid : mid + 1] + d[mid : mid + 1, :]
                if float(np.max(d - through)) > slack:
                    raise InvalidParameterError(
                        f"triangle inequality fails through point {mid}"
                    )
        else:
            rng = np.random.Generator(np.random.PCG64(0x7121A7))
            idx = rng.integers(0, n, size=(SAMPLED_TRIPLES, 3))
            i, j, mid = idx[:, 0], idx[:, 1], idx[:, 2]
            if float(np.max(d[i, j] - d[i, mid] - d[mid, j])) > slack:
                raise InvalidParameterError("triangle inequality fails on a sampled triple")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "diameter", diameter)
        object.__setattr__(self, "avg_distance", float(d.sum()) / (n * n))


def shortest_path_metric(g: RegularGraph) -> FiniteMetric:
    """Hop-count metric of a connected graph (parallel edges count once)."""
    n = g.n
    if n == 1:
        return FiniteMetric(dist=np.zeros((1, 1)))
    rows = []
    cols = []
    for u, v, _ in g.edges:
        rows += [u, v]
        cols += [v, u]
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    d = shortest_path(adj, method="D", unweighted=True)
    if not np.all(np.isfinite(d)):
        raise DisconnectedGraphError(f"graph with n={n} is disconnected; metric undefined")
    return FiniteMetric(dist=np.asarray(d, dtype=np.float64))


def tree_ball_size(k: int, t: int) -> int:
    """Points within distance t of a vertex in the infinite k-regular tree.

    ``1 + k * ((k-1)**t - 1) / (k - 2)``, evaluated in exact integers.
    """
    if k < 3:
        raise InvalidParameterError(f"tree_ball_size requires k >= 3, got {k}")
    if t < 0:
        raise InvalidParameterError(f"t must be >= 0, got {t}")
    return 1 + k * ((k - 1) ** t - 1) // (k - 2)


def counting_lower_bound(n: int, k: int) -> float:
    """Average-distance lower bound t/2 for any k-regular graph on n vertices.

    Balls of radius t in a k-regular graph hold at most :func:`tree_ball_size`
    points, so while that stays below n/2, over half of all pairs sit at
    distance greater than t and the average distance is at least t/2.
    Returns 0.0 when no positive t qualifies (tiny n).
    """
    if k <= 2:
        raise InvalidParameterError(f"counting_lower_bound requires k >= 3, got {k}")
    if n < 2:
        raise InvalidParameterError(f"counting_lower_bound requires n >= 2, got {n}")
    if not 2 * tree_ball_size(k, 0) < n:
        return 0.0
    t = 0
    while 2 * tree_ball_size(k, t + 1) < n:
        t += 1
    return t / 2.0
