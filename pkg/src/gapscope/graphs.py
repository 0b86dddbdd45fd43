"""Regular-graph generators and their normalized adjacency matrices.

All graphs are finite, undirected, loop-free multigraphs in which every
vertex has the same weighted degree ``k`` (edge multiplicities count).
The normalized adjacency matrix divides multiplicities by ``k``, giving a
symmetric stochastic matrix whose spectrum drives everything downstream.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ._limits import check_size
from .errors import (
    InvalidMatrixError,
    InvalidParameterError,
    NumericalFailureError,
    SamplingFailureError,
)

__all__ = [
    "FAMILY_TAGS",
    "RegularGraph",
    "StochasticMatrix",
    "cycle_graph",
    "complete_graph",
    "hypercube_graph",
    "random_regular_graph",
    "margulis_graph",
    "normalized_adjacency",
    "adjacency_matrix",
    "parse_edge_list",
    "format_edge_list",
    "read_edge_list",
    "write_edge_list",
]

FAMILY_TAGS = ("cycle", "complete", "hypercube", "random_regular", "margulis", "custom")

#: Matrices further from symmetric than this are rejected outright.
SYMMETRY_TOL = 1e-9
#: Row sums of a stochastic matrix must match 1 to this absolute tolerance.
ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class RegularGraph:
    """A k-regular loop-free multigraph on vertices ``0 .. n-1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    k : int
        Weighted degree of every vertex.
    edges : tuple of (u, v, multiplicity)
        Canonically sorted edge list with ``u < v`` and multiplicity >= 1.
    family_tag : str
        One of :data:`FAMILY_TAGS`.
    """

    n: int
    k: int
    edges: tuple[tuple[int, int, int], ...]
    family_tag: str = "custom"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameterError(f"n must be >= 1, got {self.n}")
        if self.k < 1:
            raise InvalidParameterError(f"k must be >= 1, got {self.k}")
        if self.family_tag not in FAMILY_TAGS:
            raise InvalidParameterError(f"unknown family_tag {self.family_tag!r}")
        canon = []
        seen = set()
        for u, v, mult in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidParameterError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u} is not allowed")
            if mult < 1:
                raise InvalidParameterError(f"edge ({u}, {v}) has multiplicity {mult} < 1")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidParameterError(f"edge {key} listed twice; merge multiplicities")
            seen.add(key)
            canon.append((key[0], key[1], int(mult)))
        canon.sort()
        object.__setattr__(self, "edges", tuple(canon))
        degrees = self.degree_sequence()
        bad = np.flatnonzero(degrees != self.k)
        if bad.size:
            raise InvalidParameterError(
                f"vertex {int(bad[0])} has weighted degree {int(degrees[bad[0]])}, expected k={self.k}"
            )

    def degree_sequence(self) -> np.ndarray:
        """Weighted degree of each vertex (multiplicities counted)."""
        degrees = np.zeros(self.n, dtype=np.int64)
        for u, v, mult in self.edges:
            degrees[u] += mult
            degrees[v] += mult
        return degrees

    @property
    def edge_count(self) -> int:
        """Number of distinct edges (parallel edges counted once)."""
        return len(self.edges)


@dataclass(frozen=True)
class StochasticMatrix:
    """A symmetric nonnegative matrix with unit row sums.

    The array is canonicalized on construction: symmetrized exactly,
    negative round-off clipped at zero, and made read-only.
    """

    a: np.ndarray
    n: int = field(init=False)

    def __post_init__(self) -> None:
        a = np.array(self.a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidMatrixError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] < 1:
            raise InvalidMatrixError("matrix must have at least one row")
        if not np.all(np.isfinite(a)):
            raise InvalidMatrixError("matrix contains non-finite entries")
        asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
        if asym > SYMMETRY_TOL:
            raise InvalidMatrixError(f"matrix asymmetry {asym:.3e} exceeds {SYMMETRY_TOL:.0e}")
        a = (a + a.T) / 2.0
        low = float(a.min())
        if low < -ROW_SUM_TOL:
            raise InvalidMatrixError(f"matrix has negative entry {low:.3e}")
        np.clip(a, 0.0, None, out=a)
        rows = a.sum(axis=1)
        worst = float(np.max(np.abs(rows - 1.0)))
        if worst > ROW_SUM_TOL:
            raise InvalidMatrixError(f"row sums deviate from 1 by {worst:.3e} (tol {ROW_SUM_TOL:.0e})")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "n", a.shape[0])


def _edges_from_pairs(pairs) -> tuple[tuple[int, int, int], ...]:
    """Collapse an iterable of (u, v) pairs into a canonical multiplicity list."""
    counts: dict[tuple[int, int], int] = {}
    for u, v in pairs:
        key = (u, v) if u < v else (v, u)
        counts[key] = counts.get(key, 0) + 1
    return tuple((u, v, mult) for (u, v), mult in sorted(counts.items()))


def _is_connected(n: int, edges) -> bool:
    """Breadth-first reachability from vertex 0."""
    if n <= 1:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = bytearray(n)
    seen[0] = 1
    queue = deque([0])
    reached = 1
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = 1
                reached += 1
                queue.append(w)
    return reached == n


def cycle_graph(n: int) -> RegularGraph:
    """The n-cycle C_n (n >= 3, 2-regular)."""
    if n < 3:
        raise InvalidParameterError(f"cycle_graph requires n >= 3, got {n}")
    check_size(n)
    pairs = [(i, (i + 1) % n) for i in range(n)]
    return RegularGraph(n=n, k=2, edges=_edges_from_pairs(pairs), family_tag="cycle")


def complete_graph(n: int) -> RegularGraph:
    """The complete graph K_n (n >= 2, (n-1)-regular)."""
    if n < 2:
        raise InvalidParameterError(f"complete_graph requires n >= 2, got {n}")
    check_size(n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return RegularGraph(n=n, k=n - 1, edges=_edges_from_pairs(pairs), family_tag="complete")


def hypercube_graph(d: int) -> RegularGraph:
    """The Hamming cube {0,1}^d (d >= 1, d-regular on 2^d vertices)."""
    if d < 1:
        raise InvalidParameterError(f"hypercube_graph requires d >= 1, got {d}")
    n = 1 << d
    check_size(n)
    pairs = []
    for v in range(n):
        for b in range(d):
            w = v ^ (1 << b)
            if v < w:
                pairs.append((v, w))
    return RegularGraph(n=n, k=d, edges=_edges_from_pairs(pairs), family_tag="hypercube")


def random_regular_graph(n: int, k: int, seed: int, max_attempts: int = 1000) -> RegularGraph:
    """A uniform-ish simple connected k-regular graph via the pairing model.

    Stubs are paired by a seeded random permutation; any pairing containing
    a self-loop, a parallel edge, or a disconnected result is thrown away
    whole and resampled.  Deterministic given ``seed``.

    Parameters
    ----------
    n, k : int
        Vertex count and degree; ``n * k`` must be even and ``3 <= k < n``.
    seed : int
        RNG seed; the same seed always yields the same graph.
    max_attempts : int
        Rejection budget before :class:`SamplingFailureError`.
    """
    if k < 3:
        raise InvalidParameterError(f"random_regular_graph requires k >= 3, got {k}")
    if k >= n:
        raise InvalidParameterError(f"random_regular_graph requires k < n, got k={k}, n={n}")
    if (n * k) % 2 != 0:
        raise InvalidParameterError(f"n*k must be even, got n={n}, k={k}")
    if max_attempts < 1:
        raise InvalidParameterError(f"max_attempts must be >= 1, got {max_attempts}")
    check_size(n)
    if k == n - 1:
        # The only simple (n-1)-regular graph is K_n; a random pairing is
        # simple with probability ~exp(-k^2/4), so sampling would always
        # exhaust the budget.  Conditioned on success the answer is forced,
        # hence returning it directly preserves the sampling distribution.
        return RegularGraph(
            n=n,
            k=k,
            edges=tuple((i, j, 1) for i in range(n) for j in range(i + 1, n)),
            family_tag="random_regular",
        )
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), k)
    for _ in range(max_attempts):
        paired = stubs[rng.permutation(stubs.size)].reshape(-1, 2)
        u = np.minimum(paired[:, 0], paired[:, 1])
        v = np.maximum(paired[:, 0], paired[:, 1])
        if np.any(u == v):
            continue
        keys = u * n + v
        if np.unique(keys).size != keys.size:
            continue
        edges = tuple((int(a), int(b), 1) for a, b in sorted(zip(u.tolist(), v.tolist())))
        if not _is_connected(n, edges):
            continue
        return RegularGraph(n=n, k=k, edges=edges, family_tag="random_regular")
    raise SamplingFailureError(
        f"no simple connected pairing found for n={n}, k={k} in {max_attempts} attempts"
    )


def margulis_graph(m: int) -> RegularGraph:
    """The Margulis 8-regular expander multigraph on the m x m torus.

    Vertices are pairs (x, y) in Z_m x Z_m, indexed as ``x * m + y``.  Each
    vertex is joined to its images under the four maps

        S1: (x, y) -> (x + y, y)        S2: (x, y) -> (x + y + 1, y)
        S3: (x, y) -> (x, y + x)        S4: (x, y) -> (x, y + x + 1)

    and their inverses, multiplicities merged into edge weights.  Where a
    map fixes a vertex (which would create a self-loop), the edge is
    redirected to the paired map's image (S1 <-> S2, S3 <-> S4); this keeps
    every vertex at weighted degree exactly 8 with no loops.
    """
    if m < 2:
        raise InvalidParameterError(f"margulis_graph requires m >= 2, got {m}")
    n = m * m
    check_size(n)

    def idx(x: int, y: int) -> int:
        return (x % m) * m + (y % m)

    pairs = []
    for x in range(m):
        for y in range(m):
            v = idx(x, y)
            images = [
                (idx(x + y, y), idx(x + y + 1, y)),      # S1 redirected to S2
                (idx(x + y + 1, y), idx(x + y, y)),      # S2 redirected to S1
                (idx(x, y + x), idx(x, y + x + 1)),      # S3 redirected to S4
                (idx(x, y + x + 1), idx(x, y + x)),      # S4 redirected to S3
            ]
            for target, fallback in images:
                pairs.append((v, target) if target != v else (v, fallback))
    edges = _edges_from_pairs(pairs)
    if not _is_connected(n, edges):
        raise NumericalFailureError(f"margulis_graph produced a disconnected graph for m={m}")
    return RegularGraph(n=n, k=8, edges=edges, family_tag="margulis")


def adjacency_matrix(g: RegularGraph, weighted: bool = True) -> np.ndarray:
    """Dense adjacency matrix; multiplicities included unless ``weighted=False``."""
    a = np.zeros((g.n, g.n), dtype=np.float64)
    for u, v, mult in g.edges:
        w = float(mult) if weighted else 1.0
        a[u, v] = w
        a[v, u] = w
    return a


def normalized_adjacency(g: RegularGraph) -> StochasticMatrix:
    """Adjacency with every multiplicity divided by k (symmetric, stochastic)."""
    return StochasticMatrix(adjacency_matrix(g) / float(g.k))


def parse_edge_list(text: str, family_tag: str = "custom") -> RegularGraph:
    """Parse the plain-text edge-list format.

    First non-blank line: ``n k``.  Each following line: ``u v`` or
    ``u v multiplicity`` (default multiplicity 1).  ``#`` starts a comment.
    """
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines:
        raise InvalidParameterError("empty edge-list text")
    head = lines[0].split()
    if len(head) != 2:
        raise InvalidParameterError(f"first line must be 'n k', got {lines[0]!r}")
    try:
        n, k = int(head[0]), int(head[1])
    except ValueError as exc:
        raise InvalidParameterError(f"first line must be 'n k', got {lines[0]!r}") from exc
    counts: dict[tuple[int, int], int] = {}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise InvalidParameterError(f"bad edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            mult = int(parts[2]) if len(parts) == 3 else 1
        except ValueError as exc:
            raise InvalidParameterError(f"bad edge line {line!r}") from exc
        key = (min(u, v), max(u, v))
        counts[key] = counts.get(key, 0) + mult
    edges = tuple((u, v, mult) for (u, v), mult in sorted(counts.items()))
    return RegularGraph(n=n, k=k, edges=edges, family_tag=family_tag)


def format_edge_list(g: RegularGraph) -> str:
    """Inverse of :func:`parse_edge_list` (multiplicity omitted when 1)."""
    out = [f"{g.n} {g.k}"]
    for u, v, mult in g.edges:
        out.append(f"{u} {v}" if mult == 1 else f"{u} {v} {mult}")
    return "\n".join(out) + "\n"


def read_edge_list(path, family_tag: str = "custom") -> RegularGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), family_tag=family_tag)


def write_edge_list(g: RegularGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
