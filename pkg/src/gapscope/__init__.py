"""gapscope: nonlinear spectral gaps, metric embeddings, and the bounds relating them.

The library is organized around one pipeline: generate regular graphs
(:mod:`gapscope.graphs`), measure their spectra (:mod:`gapscope.spectral`)
and shortest-path metrics (:mod:`gapscope.metrics`), embed those metrics
into normed spaces (:mod:`gapscope.norms`, :mod:`gapscope.embeddings`),
measure Poincare ratios of the resulting configurations
(:mod:`gapscope.poincare`), and compare everything against the analytic
bound evaluators (:mod:`gapscope.bounds`).
"""

from __future__ import annotations

from .bounds import (
    BoundReport,
    ProfileRow,
    dimension_lower_bound,
    distortion_lower_vs_dx,
    dx_lower_bound,
    effective_constant,
    expander_dim_exponent,
    hilbert_isomorph_gamma_bound,
    matousek_extrapolation_profile,
    sp_gamma_bound,
    vertex_transitive_dim_bound,
)
from .embeddings import (
    Embedding,
    EmbeddingReport,
    evaluate_embedding,
    frechet_embedding,
    optimize_embedding,
    simplex_embedding,
)
from .errors import (
    DegenerateConfigurationError,
    DisconnectedGraphError,
    DisconnectedMatrixError,
    DisconnectedSupportError,
    GapscopeError,
    InfiniteBoundError,
    InvalidMatrixError,
    InvalidParameterError,
    NormalizationError,
    NumericalFailureError,
    SamplingFailureError,
    SizeLimitError,
)
from .graphs import (
    RegularGraph,
    StochasticMatrix,
    adjacency_matrix,
    complete_graph,
    cycle_graph,
    hypercube_graph,
    margulis_graph,
    normalized_adjacency,
    random_regular_graph,
    read_edge_list,
    write_edge_list,
)
from .metrics import FiniteMetric, counting_lower_bound, shortest_path_metric, tree_ball_size
from .norms import (
    ConvexityEstimate,
    HilbertDistanceReport,
    NormedSpace,
    SmoothnessEstimate,
    convexity_estimate,
    hilbert_distance,
    lp_space,
    mvee_ellipsoid,
    norm,
    norm_gradient,
    polytope_space,
    quadratic_space,
    smoothness_estimate,
    space_from_dict,
    space_to_dict,
)
from .optimize import OptimizerConfig
from .poincare import (
    PointConfig,
    PoincareReport,
    gamma_line_exact,
    maximize_poincare_ratio,
    poincare_ratio,
)
from .spectral import Spectrum, full_spectrum, second_eigenvalue, second_eigenvector, spectral_gap

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # graphs
    "RegularGraph",
    "StochasticMatrix",
    "cycle_graph",
    "complete_graph",
    "hypercube_graph",
    "random_regular_graph",
    "margulis_graph",
    "adjacency_matrix",
    "normalized_adjacency",
    "read_edge_list",
    "write_edge_list",
    # spectral
    "Spectrum",
    "full_spectrum",
    "second_eigenvalue",
    "second_eigenvector",
    "spectral_gap",
    # metrics
    "FiniteMetric",
    "shortest_path_metric",
    "counting_lower_bound",
    "tree_ball_size",
    # norms
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
    # optimize
    "OptimizerConfig",
    # poincare
    "PointConfig",
    "PoincareReport",
    "poincare_ratio",
    "gamma_line_exact",
    "maximize_poincare_ratio",
    # bounds
    "BoundReport",
    "ProfileRow",
    "dimension_lower_bound",
    "dx_lower_bound",
    "hilbert_isomorph_gamma_bound",
    "sp_gamma_bound",
    "expander_dim_exponent",
    "vertex_transitive_dim_bound",
    "distortion_lower_vs_dx",
    "matousek_extrapolation_profile",
    "effective_constant",
    # embeddings
    "Embedding",
    "EmbeddingReport",
    "evaluate_embedding",
    "frechet_embedding",
    "simplex_embedding",
    "optimize_embedding",
    # errors
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
