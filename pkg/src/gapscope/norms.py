"""Finite-dimensional normed spaces and their Euclidean geometry.

Three kinds of space are supported:

* ``lp``: the classical l_p norms, ``p`` in ``[1, inf]``;
* ``quadratic``: ``sqrt(x^T Q x)`` for a symmetric positive-definite Q;
* ``polytope``: the Minkowski gauge of a symmetric spanning vertex set
  (the unit ball is the convex hull of the vertices).

On top of the norms this module estimates how far a space is from a
Euclidean one (through the minimum-volume enclosing ellipsoid of a
polytope's vertices, or in closed form for l_p), and searches for witness
pairs certifying lower bounds on the p-smoothness and q-convexity
constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .errors import (
    InvalidMatrixError,
    InvalidParameterError,
    NumericalFailureError,
)

__all__ = [
    "NormedSpace",
    "lp_space",
    "quadratic_space",
    "polytope_space",
    "space_to_dict",
    "space_from_dict",
    "norm",
    "norm_gradient",
    "HilbertDistanceReport",
    "hilbert_distance",
    "mvee_ellipsoid",
    "SmoothnessEstimate",
    "ConvexityEstimate",
    "smoothness_estimate",
    "convexity_estimate",
]

#: Relative half-width of the certified bracket returned by the gauge
#: bisection.  Tighter than the 1e-9 contract so that differences of two
#: gauge values still resolve at 1e-9.
GAUGE_REL_TOL = 2e-10
#: Relative optimality-gap target of the enclosing-ellipsoid iteration.
MVEE_TOL = 1e-7
MVEE_MAX_ITERATIONS = 100_000

# Witness pairs with |y| below this fraction of |x| sit where floating-point
# cancellation in |x+y|^p + |x-y|^p - 2|x|^p can exceed the true value, so
# nothing can be certified from them.  Keeping clear of that region caps the
# spurious excess over an exact ratio at ~1e-7.
_REL_Y_FLOOR = 1e-3

_LP_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}

_KINDS = ("lp", "quadratic", "polytope")


@dataclass(frozen=True, eq=False)
class NormedSpace:
    """Descriptor of a finite-dimensional normed space (see module docs)."""

    kind: str
    dim: int
    p: float | None = None
    q_matrix: np.ndarray | None = None
    vertices: np.ndarray | None = None
    _facets: np.ndarray | None = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise InvalidParameterError(f"unknown space kind {self.kind!r}")
        if self.dim < 1:
            raise InvalidParameterError(f"dim must be >= 1, got {self.dim}")
        if self.kind == "lp":
            if self.p is None or not (self.p >= 1.0):
                raise InvalidParameterError(f"lp space needs p >= 1, got {self.p}")
        elif self.kind == "quadratic":
            q = np.array(self.q_matrix, dtype=np.float64)
            if q.shape != (self.dim, self.dim):
                raise InvalidParameterError(
                    f"q_matrix shape {q.shape} does not match dim {self.dim}"
                )
            if not np.all(np.isfinite(q)):
                raise InvalidMatrixError("q_matrix has non-finite entries")
            scale = max(1.0, float(np.max(np.abs(q))))
            if float(np.max(np.abs(q - q.T))) > 1e-12 * scale:
                raise InvalidMatrixError("q_matrix must be symmetric")
            q = (q + q.T) / 2.0
            try:
                np.linalg.cholesky(q)
            except np.linalg.LinAlgError as exc:
                raise InvalidMatrixError("q_matrix must be positive definite") from exc
            q.setflags(write=False)
            object.__setattr__(self, "q_matrix", q)
        else:
            v = np.array(self.vertices, dtype=np.float64)
            if v.ndim != 2 or v.shape[1] != self.dim:
                raise InvalidParameterError(
                    f"vertices must have shape (m, {self.dim}), got {v.shape}"
                )
            if v.shape[0] < 2:
                raise InvalidParameterError("a symmetric polytope needs at least 2 vertices")
            if not np.all(np.isfinite(v)):
                raise InvalidParameterError("vertices contain non-finite entries")
            scale = float(np.max(np.abs(v)))
            if scale == 0.0:
                raise InvalidParameterError("vertices are all zero")
            fwd = v[np.lexsort(v.T[::-1])]
            bwd = (-v)[np.lexsort((-v).T[::-1])]
            if not np.allclose(fwd, bwd, atol=1e-12 * scale, rtol=0.0):
                raise InvalidParameterError("vertex set must be closed under negation")
            if np.linalg.matrix_rank(v, tol=1e-10 * scale) < self.dim:
                raise InvalidParameterError("vertices must span the whole space")
            v.setflags(write=False)
            object.__setattr__(self, "vertices", v)

    def facets(self) -> np.ndarray | None:
        """Facet functionals F with ``gauge(x) = max(F @ x)``, or None.

        Computed lazily from the convex hull; None when hull enumeration is
        unavailable (degenerate geometry).  Used for subgradients, batched
        gauge evaluation, and the Euclidean-distance upper estimate; the
        public :func:`norm` keeps the LP-certified bisection route.
        """
        if self.kind != "polytope":
            return None
        if self._facets is not None:
            return self._facets
        verts = self.vertices
        if self.dim == 1:
            f = np.array([[1.0], [-1.0]]) / float(np.max(np.abs(verts)))
        else:
            try:
                from scipy.spatial import ConvexHull

                hull = ConvexHull(verts)
            except Exception:
                return None
            eq = hull.equations  # rows (a, b): a.x + b <= 0 inside
            offs = -eq[:, -1]
            if float(offs.min()) <= 0.0:
                return None
            f = eq[:, :-1] / offs[:, None]
        f.setflags(write=False)
        object.__setattr__(self, "_facets", f)
        return f


def lp_space(dim: int, p: float) -> NormedSpace:
    return NormedSpace(kind="lp", dim=dim, p=float(p))


def quadratic_space(q_matrix) -> NormedSpace:
    q = np.asarray(q_matrix, dtype=np.float64)
    if q.ndim != 2:
        raise InvalidParameterError("q_matrix must be a 2-d array")
    return NormedSpace(kind="quadratic", dim=q.shape[0], q_matrix=q)


def polytope_space(vertices) -> NormedSpace:
    v = np.asarray(vertices, dtype=np.float64)
    if v.ndim != 2:
        raise InvalidParameterError("vertices must be a 2-d array")
    return NormedSpace(kind="polytope", dim=v.shape[1], vertices=v)


def space_to_dict(space: NormedSpace) -> dict:
    """JSON-ready descriptor; ``p = inf`` is spelled as the string "inf"."""
    out: dict = {"kind": space.kind, "dim": space.dim}
    if space.kind == "lp":
        out["p"] = "inf" if math.isinf(space.p) else space.p
    elif space.kind == "quadratic":
        out["q_matrix"] = space.q_matrix.tolist()
    else:
        out["vertices"] = space.vertices.tolist()
    return out


def space_from_dict(data: dict) -> NormedSpace:
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidParameterError("space descriptor must be an object with a 'kind' field")
    kind = data["kind"]
    if kind == "lp":
        raw = data.get("p")
        if isinstance(raw, str):
            if raw.lower() in ("inf", "infinity"):
                p = math.inf
            else:
                raise InvalidParameterError(f"bad p value {raw!r}")
        elif raw is None:
            raise InvalidParameterError("lp descriptor needs a 'p' field")
        else:
            p = float(raw)
        return lp_space(int(data["dim"]), p)
    if kind == "quadratic":
        return quadratic_space(data["q_matrix"])
    if kind == "polytope":
        return polytope_space(data["vertices"])
    raise InvalidParameterError(f"unknown space kind {kind!r}")


def _in_hull(vertices: np.ndarray, x: np.ndarray) -> bool:
    """LP feasibility: is x a convex combination of the vertices?"""
    m = vertices.shape[0]
    a_eq = np.vstack([vertices.T, np.ones(m)])
    b_eq = np.concatenate([x, [1.0]])
    res = linprog(
        np.zeros(m),
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=(0.0, None),
        method="highs",
        options=_LP_OPTIONS,
    )
    if res.status == 0:
        return True
    if res.status == 2:
        return False
    raise NumericalFailureError(f"hull-membership LP failed with status {res.status}")


def _gauge_bisect(
    vertices: np.ndarray,
    x: np.ndarray,
    rel_tol: float = GAUGE_REL_TOL,
    seed_value: float | None = None,
) -> float:
    """Gauge by bisection on hull-membership LPs, bracket then halve.

    ``seed_value`` (e.g. from the facet list) only tightens the initial
    bracket; both bracket ends are still LP-verified, so a wrong seed
    costs time, not correctness.
    """
    nx = float(np.linalg.norm(x))
    if nx == 0.0:
        return 0.0
    vmax = float(np.max(np.linalg.norm(vertices, axis=1)))
    lo = nx / vmax  # certified lower bound on the gauge
    hi = None
    if seed_value is not None and seed_value > lo:
        cand = seed_value * (1.0 + 1e-9)
        if _in_hull(vertices, x / cand):
            hi = cand
            floor = seed_value * (1.0 - 1e-9)
            if floor > lo and not _in_hull(vertices, x / floor):
                lo = floor
    if hi is None:
        hi = lo
        for _ in range(200):
            if _in_hull(vertices, x / hi):
                break
            hi *= 2.0
        else:  # pragma: no cover - impossible for a spanning symmetric set
            raise NumericalFailureError("gauge bracket search failed")
    if hi == lo:
        return hi
    while hi - lo > 2.0 * rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if _in_hull(vertices, x / mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _gauge_lp_direct(vertices: np.ndarray, x: np.ndarray) -> tuple[float, np.ndarray]:
    """Gauge as min sum(mu), V^T mu = x, mu >= 0; returns (value, subgradient).

    The equality duals y satisfy gauge(x) = <y, x> and are a subgradient.
    This single-LP route is the independent cross-check of the bisection
    and the subgradient source when no facet list is available.
    """
    m = vertices.shape[0]
    res = linprog(
        np.ones(m),
        A_eq=vertices.T,
        b_eq=x,
        bounds=(0.0, None),
        method="highs",
        options=_LP_OPTIONS,
    )
    if res.status != 0:
        raise NumericalFailureError(f"gauge LP failed with status {res.status}")
    value = float(res.fun)
    y = np.asarray(res.eqlin.marginals, dtype=np.float64)
    if float(y @ x) < 0.0:
        y = -y
    return value, y


def _gauge_batch(space: NormedSpace, vecs: np.ndarray) -> np.ndarray:
    """Gauge of each row of ``vecs``; facet fast path, else bisection."""
    facets = space.facets()
    if facets is not None:
        vals = vecs @ facets.T
        return np.max(vals, axis=-1)
    flat = vecs.reshape(-1, space.dim)
    return np.array([_gauge_bisect(space.vertices, row) for row in flat]).reshape(
        vecs.shape[:-1]
    )


def norm(space: NormedSpace, x) -> float:
    """The norm of a single vector in the given space.

    Polytope gauges are computed by bisection on hull-membership LPs; the
    certified bracket is tighter than 1e-9 relative and its midpoint is
    returned.
    """
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (space.dim,):
        raise InvalidParameterError(f"expected a vector of shape ({space.dim},), got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidParameterError("vector has non-finite entries")
    if space.kind == "lp":
        return _lp_norm(v, space.p)
    if space.kind == "quadratic":
        return float(math.sqrt(max(0.0, float(v @ space.q_matrix @ v))))
    facets = space.facets()
    seed = float(np.max(facets @ v)) if facets is not None else None
    return _gauge_bisect(space.vertices, v, seed_value=seed)


def _lp_norm(v: np.ndarray, p: float) -> float:
    a = np.abs(v)
    top = float(a.max()) if a.size else 0.0
    if top == 0.0:
        return 0.0
    if math.isinf(p):
        return top
    if p == 1.0:
        return float(a.sum())
    if p == 2.0:
        return float(np.linalg.norm(v))
    return top * float(np.sum((a / top) ** p)) ** (1.0 / p)


def norm_gradient(space: NormedSpace, x) -> np.ndarray:
    """A subgradient of the norm at ``x`` (zero vector at the origin).

    Ties (l_inf maximizing coordinate, polytope active facet) break to the
    lowest index, so the selection is deterministic.
    """
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (space.dim,):
        raise InvalidParameterError(f"expected a vector of shape ({space.dim},), got {v.shape}")
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        return np.zeros(space.dim)
    if space.kind == "lp":
        p = space.p
        if math.isinf(p):
            j = int(np.argmax(np.abs(v)))
            g = np.zeros(space.dim)
            g[j] = math.copysign(1.0, v[j])
            return g
        if p == 1.0:
            return np.sign(v)
        npv = _lp_norm(v, p)
        return np.sign(v) * (np.abs(v) / npv) ** (p - 1.0)
    if space.kind == "quadratic":
        qv = space.q_matrix @ v
        return qv / math.sqrt(max(1e-300, float(v @ qv)))
    facets = space.facets()
    if facets is not None:
        return facets[int(np.argmax(facets @ v))].copy()
    _, y = _gauge_lp_direct(space.vertices, v)
    return y


def pairwise_norms(space: NormedSpace, diffs: np.ndarray) -> np.ndarray:
    """Norms of a (..., dim) array of vectors, vectorized where possible."""
    if space.kind == "lp":
        p = space.p
        a = np.abs(diffs)
        if math.isinf(p):
            return a.max(axis=-1)
        if p == 1.0:
            return a.sum(axis=-1)
        if p == 2.0:
            return np.sqrt(np.sum(a * a, axis=-1))
        top = a.max(axis=-1)
        safe = np.where(top > 0.0, top, 1.0)
        out = safe * np.sum((a / safe[..., None]) ** p, axis=-1) ** (1.0 / p)
        return np.where(top > 0.0, out, 0.0)
    if space.kind == "quadratic":
        q = space.q_matrix
        vals = np.einsum("...i,ij,...j->...", diffs, q, diffs)
        return np.sqrt(np.maximum(vals, 0.0))
    return _gauge_batch(space, diffs)


def pairwise_norm_gradients(space: NormedSpace, diffs: np.ndarray) -> np.ndarray:
    """Subgradients for a (..., dim) array of vectors (zero at zero)."""
    if space.kind == "lp":
        p = space.p
        if math.isinf(p):
            a = np.abs(diffs)
            j = np.argmax(a, axis=-1)
            g = np.zeros_like(diffs)
            idx = np.indices(j.shape)
            g[(*idx, j)] = np.sign(np.take_along_axis(diffs, j[..., None], axis=-1))[..., 0]
            top = a.max(axis=-1)
            g[top == 0.0] = 0.0
            return g
        if p == 1.0:
            return np.sign(diffs)
        n = pairwise_norms(space, diffs)
        safe = np.where(n > 0.0, n, 1.0)
        g = np.sign(diffs) * (np.abs(diffs) / safe[..., None]) ** (p - 1.0)
        g[n == 0.0] = 0.0
        return g
    if space.kind == "quadratic":
        qd = diffs @ space.q_matrix
        n = pairwise_norms(space, diffs)
        safe = np.where(n > 0.0, n, 1.0)
        g = qd / safe[..., None]
        g[n == 0.0] = 0.0
        return g
    facets = space.facets()
    if facets is not None:
        vals = diffs @ facets.T
        j = np.argmax(vals, axis=-1)
        g = np.array(facets[j])
        g[np.max(vals, axis=-1) <= 0.0] = 0.0
        return g
    flat = diffs.reshape(-1, space.dim)
    out = np.zeros_like(flat)
    for i, row in enumerate(flat):
        if float(np.linalg.norm(row)) > 0.0:
            out[i] = _gauge_lp_direct(space.vertices, row)[1]
    return out.reshape(diffs.shape)


@dataclass(frozen=True)
class HilbertDistanceReport:
    """Bracket [lower, upper] on the distance to a Euclidean space of the
    same dimension; ``method`` is "analytic", "mvee", or "john_bound"."""

    lower: float
    upper: float
    method: str

    def __post_init__(self) -> None:
        if not (1.0 <= self.lower <= self.upper):
            raise InvalidParameterError(
                f"need 1 <= lower <= upper, got ({self.lower}, {self.upper})"
            )


def mvee_ellipsoid(
    points,
    tol: float = MVEE_TOL,
    max_iterations: int = MVEE_MAX_ITERATIONS,
) -> tuple[np.ndarray, float]:
    """Minimum-volume origin-centered ellipsoid enclosing a symmetric set.

    Returns ``(M, gap)`` where ``{x : x^T M x <= 1}`` is guaranteed to
    contain every input point and ``gap`` is the relative optimality gap
    still open when the barycentric coordinate ascent stopped (0.0 once it
    converged below ``tol``).  The shape matrix is always deflated by the
    worst leverage measured on the final weights, so containment holds to
    rounding error even when the iteration cap cuts the ascent short.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise InvalidParameterError("points must be a 2-d array")
    m, d = pts.shape
    if m < 1 or np.linalg.matrix_rank(pts) < d:
        raise InvalidParameterError("points must span the whole space")
    u = np.full(m, 1.0 / m)
    converged = False
    for _ in range(max_iterations):
        x = pts.T @ (u[:, None] * pts)
        leverage = np.einsum("ij,ij->i", pts @ np.linalg.inv(x), pts)
        j = int(np.argmax(leverage))
        kmax = float(leverage[j])
        if kmax <= d * (1.0 + tol):
            converged = True
            break
        beta = (kmax - d) / (d * (kmax - 1.0))
        u *= 1.0 - beta
        u[j] += beta
    if not converged:
        # the loop exited right after a weight update; the ascent is not
        # monotone in max leverage, so remeasure before deflating
        x = pts.T @ (u[:, None] * pts)
        kmax = float(np.max(np.einsum("ij,ij->i", pts @ np.linalg.inv(x), pts)))
    scale = max(kmax / d, 1.0)
    return np.linalg.inv(x) / (d * scale), 0.0 if converged else kmax / d - 1.0


def _parallelogram_lower(norms_of: np.ndarray) -> np.ndarray:
    """Certified Euclidean-distance lower bounds from pair norms.

    ``norms_of`` has columns (|u+v|, |u-v|, |u|, |v|); any norm within
    bi-Lipschitz constant c of a Euclidean one keeps
    ``(|u+v|^2 + |u-v|^2) / (2|u|^2 + 2|v|^2)`` inside ``[1/c^2, c^2]``,
    so a measured violation of that window bounds c from below.
    """
    a = norms_of[:, 0] ** 2 + norms_of[:, 1] ** 2
    b = 2.0 * (norms_of[:, 2] ** 2 + norms_of[:, 3] ** 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where((a > 0) & (b > 0), np.maximum(a / b, b / a), 1.0)
    return np.sqrt(r)


def hilbert_distance(
    space: NormedSpace, samples: int = 10_000, seed: int = 0
) -> HilbertDistanceReport:
    """How non-Euclidean the space is (1 means Euclidean-isometric).

    l_p and quadratic spaces are handled in closed form (``dim^{|1/p-1/2|}``
    for l_p is the classical value, taken from the literature rather than
    computed here).  Polytope spaces go through the minimum-volume
    enclosing ellipsoid of the vertex set: the ellipsoid contains the unit
    ball, so the largest facet functional measured in the ellipsoid's dual
    norm is a certified upper estimate, capped at ``sqrt(dim)``.  The lower
    estimate is the largest sampled parallelogram-identity violation, which
    certifies a true lower bound on the distance.
    """
    if space.kind == "lp":
        value = float(space.dim) ** abs(0.5 - (0.0 if math.isinf(space.p) else 1.0 / space.p))
        return HilbertDistanceReport(lower=value, upper=value, method="analytic")
    if space.kind == "quadratic":
        return HilbertDistanceReport(lower=1.0, upper=1.0, method="analytic")

    verts = space.vertices
    dim = space.dim
    john = math.sqrt(dim)
    m_shape, _gap = mvee_ellipsoid(verts)
    facets = space.facets()
    rng = np.random.default_rng(seed)

    if facets is not None:
        # sup over directions of gauge(x) / |x|_E equals the largest facet
        # functional in the dual ellipsoid norm; exact, no sampling needed
        m_inv = np.linalg.inv(m_shape)
        upper_raw = float(np.sqrt(np.max(np.einsum("ij,jk,ik->i", facets, m_inv, facets))))
        method = "mvee"
    else:
        # no certified upper route without the facet list
        upper_raw = john
        method = "john_bound"

    n_pairs = samples if facets is not None else min(samples, 200)
    u = rng.standard_normal((n_pairs, dim))
    v = rng.standard_normal((n_pairs, dim))
    det_u, det_v = [], []
    eye = np.eye(dim)
    for i in range(dim):
        for j in range(i + 1, dim):
            det_u.append(eye[i])
            det_v.append(eye[j])
    cap = min(len(verts), 40)
    for i in range(cap):
        for j in range(i + 1, cap):
            det_u.append(verts[i])
            det_v.append(verts[j])
    if det_u:
        u = np.vstack([u, det_u])
        v = np.vstack([v, det_v])
    stacked = np.stack([u + v, u - v, u, v], axis=1)
    norms_of = _gauge_batch(space, stacked.reshape(-1, dim)).reshape(-1, 4)
    lower = float(max(1.0, float(np.max(_parallelogram_lower(norms_of)))))

    upper = min(john, max(upper_raw, lower))
    lower = min(lower, upper)
    return HilbertDistanceReport(lower=lower, upper=upper, method=method)


@dataclass(frozen=True)
class SmoothnessEstimate:
    """Certified lower bound on the p-smoothness constant with its witness."""

    p: float
    s_lower: float
    witness_x: np.ndarray
    witness_y: np.ndarray


@dataclass(frozen=True)
class ConvexityEstimate:
    """Certified lower bound on the q-convexity constant with its witness."""

    q: float
    k_lower: float
    witness_x: np.ndarray
    witness_y: np.ndarray


def _search_norm_fn(space: NormedSpace):
    """Fast norm evaluator for witness search only.

    Polytope gauges via the facet list (exact to fp when available); the
    final reported witness is always re-certified through :func:`norm`.
    """
    facets = space.facets()
    if space.kind == "polytope" and facets is not None:
        return lambda v: float(np.max(facets @ v))
    return lambda v: norm(space, v)


def _smoothness_ratio(
    space: NormedSpace, p: float, x: np.ndarray, y: np.ndarray, norm_fn=None
) -> float:
    nf = norm_fn if norm_fn is not None else (lambda v: norm(space, v))
    nx = nf(x)
    ny = nf(y)
    if ny <= 0.0 or ny < _REL_Y_FLOOR * nx:
        return 0.0
    num = nf(x + y) ** p + nf(x - y) ** p - 2.0 * nx**p
    if num <= 0.0:
        return 0.0
    val = (num / (2.0 * ny**p)) ** (1.0 / p)
    if p == 1.0:
        # the triangle inequality forces the p=1 ratio <= 1 in every space;
        # anything above is arithmetic noise
        val = min(val, 1.0)
    return val


def _convexity_ratio(
    space: NormedSpace, q: float, x: np.ndarray, y: np.ndarray, norm_fn=None
) -> float:
    nf = norm_fn if norm_fn is not None else (lambda v: norm(space, v))
    nx = nf(x)
    ny = nf(y)
    if ny <= 0.0 or ny < _REL_Y_FLOOR * nx:
        return 1.0
    den = nf(x + y) ** q + nf(x - y) ** q - 2.0 * nx**q
    if den <= 0.0:
        # a flat spot: no finite constant fits this pair
        return math.inf
    return (2.0 * ny**q / den) ** (1.0 / q)


def _hill_climb(space, ratio_fn, x, y, steps: int = 200, step: float = 0.5):
    """Coordinate-wise ascent with step halving; returns (value, x, y)."""
    best = ratio_fn(space, x, y)
    dim = space.dim
    coords = 2 * dim
    stall = 0
    for i in range(steps):
        if math.isinf(best):
            break
        c = i % coords
        vec, idx = (x, c) if c < dim else (y, c - dim)
        improved = False
        for sign in (1.0, -1.0):
            cand = vec.copy()
            cand[idx] += sign * step
            cx, cy = (cand, y) if c < dim else (x, cand)
            val = ratio_fn(space, cx, cy)
            if val > best:
                best = val
                if c < dim:
                    x = cand
                else:
                    y = cand
                improved = True
                break
        if improved:
            stall = 0
        else:
            stall += 1
            if stall >= coords:
                step *= 0.5
                stall = 0
                if step < 1e-10:
                    break
    return best, x, y


def _deterministic_pairs(dim: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Corner-style starting pairs that carry the classical witnesses."""
    eye = np.eye(dim)
    pairs = []
    for i in range(dim):
        for j in range(i + 1, dim):
            pairs.append((eye[i], eye[j]))
            pairs.append((eye[i] + eye[j], eye[i] - eye[j]))
    return pairs


def _witness_key(val: float, x: np.ndarray, y: np.ndarray):
    # total order (value, then lexicographic witness) keeps the winner
    # independent of evaluation order
    return (val, tuple(float(t) for t in x), tuple(float(t) for t in y))


def _best_witness(space, search_fn, certify_fn, trials: int, seed: int):
    dim = space.dim
    rng = np.random.default_rng(seed)
    starts = _deterministic_pairs(dim)
    starts += [(rng.standard_normal(dim), rng.standard_normal(dim)) for _ in range(trials)]
    best = (1.0, np.zeros(dim), np.eye(dim)[0])
    best_key = _witness_key(*best)
    for x0, y0 in starts:
        val, x, y = _hill_climb(space, search_fn, x0.copy(), y0.copy())
        if val <= 1.0:
            continue
        # certify the final witness through the public norm route
        val = certify_fn(space, x, y)
        key = _witness_key(val, x, y)
        if key > best_key:
            best, best_key = (val, x, y), key
        if math.isinf(val):
            break
    return best


def smoothness_estimate(
    space: NormedSpace, p: float, trials: int = 200, seed: int = 0
) -> SmoothnessEstimate:
    """Lower bound on the p-smoothness constant from a witness pair.

    Maximizes ``((|x+y|^p + |x-y|^p - 2|x|^p) / (2 |y|^p))^(1/p)`` over
    random pairs refined by coordinate-wise hill climbing, plus the
    deterministic corner-pair probes.  Never below 1 (witness x = 0), and
    never certified from a pair inside the cancellation-noise region.
    """
    if not (1.0 <= p <= 2.0):
        raise InvalidParameterError(f"smoothness exponent must be in [1, 2], got {p}")
    if trials < 1:
        raise InvalidParameterError("trials must be >= 1")
    fast = _search_norm_fn(space)
    val, x, y = _best_witness(
        space,
        lambda s, a, b: _smoothness_ratio(s, p, a, b, norm_fn=fast),
        lambda s, a, b: _smoothness_ratio(s, p, a, b),
        trials,
        seed,
    )
    return SmoothnessEstimate(p=p, s_lower=float(val), witness_x=x, witness_y=y)


def convexity_estimate(
    space: NormedSpace, q: float, trials: int = 200, seed: int = 0
) -> ConvexityEstimate:
    """Lower bound on the q-convexity constant from a witness pair.

    Maximizes ``(2 |y|^q / (|x+y|^q + |x-y|^q - 2|x|^q))^(1/q)``.  A pair
    whose denominator vanishes (a flat spot of the unit sphere, as on any
    polytope) certifies that no finite constant works; the result is then
    ``inf``.
    """
    if not (q >= 2.0):
        raise InvalidParameterError(f"convexity exponent must be >= 2, got {q}")
    if trials < 1:
        raise InvalidParameterError("trials must be >= 1")
    fast = _search_norm_fn(space)
    val, x, y = _best_witness(
        space,
        lambda s, a, b: _convexity_ratio(s, q, a, b, norm_fn=fast),
        lambda s, a, b: _convexity_ratio(s, q, a, b),
        trials,
        seed,
    )
    return ConvexityEstimate(q=q, k_lower=float(val), witness_x=x, witness_y=y)
