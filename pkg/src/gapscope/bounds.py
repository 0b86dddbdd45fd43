"""Closed-form bound evaluators and effective-constant inversions.

Every universal-constant slot is an explicit argument defaulting to 1, so
the artifact measures effective constants rather than asserting
inequalities whose constants are unspecified.  All evaluators are pure
functions of their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    DegenerateConfigurationError,
    InfiniteBoundError,
    InvalidParameterError,
)
from .graphs import StochasticMatrix
from .poincare import PointConfig, poincare_ratio

__all__ = [
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
]

#: Relative slack for deciding that a piecewise predicate sits on its boundary.
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound: value, inputs echo, and the branch taken."""

    name: str
    inputs: dict
    value: float
    constant_used: float
    case_taken: str = ""
    aux: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value) and self.value >= 0.0):
            raise InvalidParameterError(
                f"bound {self.name!r} evaluated to {self.value}, expected finite >= 0"
            )


def _check_gap(lambda2: float) -> float:
    if lambda2 >= 1.0:
        raise InfiniteBoundError(f"lambda2 = {lambda2} leaves no spectral gap")
    return 1.0 - lambda2


def dimension_lower_bound(n: int, lambda2: float, ratio: float, c: float = 1.0) -> float:
    """(1/2) exp(c (1-lambda2) sqrt(ratio) / sqrt(n)).

    A configuration with a large observed ratio on a well-connected matrix
    forces the dimension of the hosting space up; the caller compares this
    value against the actual dimension.
    """
    if n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    if not (c > 0.0):
        raise InvalidParameterError(f"c must be > 0, got {c}")
    gap = _check_gap(lambda2)
    if not (ratio > 0.0):
        raise DegenerateConfigurationError(f"ratio must be > 0, got {ratio}")
    return 0.5 * math.exp(c * gap * math.sqrt(ratio) / math.sqrt(n))


def dx_lower_bound(n: int, lambda2: float, ratio: float, alpha: float = 1.0) -> float:
    """(1/sqrt 2) exp((1-lambda2) sqrt(ratio) / sqrt(alpha n)).

    Same mechanism as :func:`dimension_lower_bound` but bounding the
    Euclidean distance of the hosting space instead of its dimension.
    """
    if n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    if not (alpha > 0.0):
        raise InvalidParameterError(f"alpha must be > 0, got {alpha}")
    gap = _check_gap(lambda2)
    if not (ratio > 0.0):
        raise DegenerateConfigurationError(f"ratio must be > 0, got {ratio}")
    return (1.0 / math.sqrt(2.0)) * math.exp(gap * math.sqrt(ratio) / math.sqrt(alpha * n))


def hilbert_isomorph_gamma_bound(
    lambda2: float, d_x: float, kappa: float = 1.0
) -> BoundReport:
    """Two-case gap bound for a space at Euclidean distance ``d_x``.

    Small-distance case ``d_x sqrt(1-lambda2) <= e``: kappa d_x^2/(1-lambda2).
    Large-distance case: kappa (log(d_x sqrt(1-lambda2)) / (1-lambda2))^2.
    ``aux["simple_bound"]`` carries the single-formula variant
    kappa (log(sqrt(2) d_x) / (1-lambda2))^2, which dominates the two-case
    value whenever the large case applies.  On the boundary both branches
    are evaluated and the max is reported.
    """
    if not (d_x >= 1.0):
        raise InvalidParameterError(f"d_x must be >= 1, got {d_x}")
    if not (kappa > 0.0):
        raise InvalidParameterError(f"kappa must be > 0, got {kappa}")
    gap = _check_gap(lambda2)
    predicate = d_x * math.sqrt(gap)
    small = kappa * d_x**2 / gap
    simple = kappa * (math.log(math.sqrt(2.0) * d_x) / gap) ** 2
    if abs(predicate - math.e) <= BOUNDARY_TOL * math.e:
        large = kappa * (math.log(predicate) / gap) ** 2
        value, case = max(small, large), "boundary"
    elif predicate <= math.e:
        value, case = small, "small_distance"
    else:
        value, case = kappa * (math.log(predicate) / gap) ** 2, "large_distance"
    return BoundReport(
        name="hilbert_isomorph_gamma",
        inputs={"lambda2": lambda2, "d_x": d_x},
        value=value,
        constant_used=kappa,
        case_taken=case,
        aux={"simple_bound": simple},
    )


def sp_gamma_bound(
    lambda2: float, d_x: float, s_p: float, p: float, kappa: float = 1.0
) -> BoundReport:
    """Gap bound for a p-smooth space with smoothness constant ``s_p``.

    Case predicate: d_x^p (1-lambda2)^(1-p/2) vs e s_p^p.  Below it the
    Euclidean-isomorph value kappa d_x^2/(1-lambda2) applies; above it,
    kappa (s_p^2/(1-lambda2)^(2/p)) (log(d_x^p (1-lambda2)^(1-p/2)/s_p^p))^(2/p),
    with the optimizing interpolation weight theta_opt = 1/log(...) in
    ``aux``, always inside (0, 1] when the case strictly holds.  With
    p = 1, s_p = 1 this reduces exactly to
    :func:`hilbert_isomorph_gamma_bound`.
    """
    if not (d_x >= 1.0):
        raise InvalidParameterError(f"d_x must be >= 1, got {d_x}")
    if not (s_p >= 1.0):
        raise InvalidParameterError(f"s_p must be >= 1, got {s_p}")
    if not (1.0 <= p <= 2.0):
        raise InvalidParameterError(f"p must be in [1, 2], got {p}")
    if not (kappa > 0.0):
        raise InvalidParameterError(f"kappa must be > 0, got {kappa}")
    gap = _check_gap(lambda2)
    predicate = d_x**p * gap ** (1.0 - p / 2.0)
    threshold = math.e * s_p**p
    small = kappa * d_x**2 / gap
    aux: dict = {}

    def large_value() -> float:
        log_arg = predicate / s_p**p
        return kappa * (s_p**2 / gap ** (2.0 / p)) * math.log(log_arg) ** (2.0 / p)

    if abs(predicate - threshold) <= BOUNDARY_TOL * threshold:
        value, case = max(small, large_value()), "boundary"
        aux["theta_opt"] = 1.0
    elif predicate <= threshold:
        value, case = small, "small_distance"
    else:
        value, case = large_value(), "large_distance"
        theta = 1.0 / math.log(predicate / s_p**p)
        if not (0.0 < theta <= 1.0):  # pragma: no cover - implied by the predicate
            raise InvalidParameterError(f"theta_opt = {theta} escaped (0, 1]")
        aux["theta_opt"] = theta
    return BoundReport(
        name="sp_gamma",
        inputs={"lambda2": lambda2, "d_x": d_x, "s_p": s_p, "p": p},
        value=value,
        constant_used=kappa,
        case_taken=case,
        aux=aux,
    )


def expander_dim_exponent(lambda2: float, k: int, rho: float = 1.0) -> float:
    """rho (1-lambda2) / log k, the polynomial-dimension exponent a
    k-regular graph with this gap forces on low-distortion hosts."""
    if k < 2:
        raise InvalidParameterError(f"k must be >= 2, got {k}")
    if not (rho > 0.0):
        raise InvalidParameterError(f"rho must be > 0, got {rho}")
    gap = _check_gap(lambda2)
    return rho * gap / math.log(k)


def vertex_transitive_dim_bound(
    lambda2: float, diam: float, d_distortion: float = 1.0, c: float = 1.0
) -> float:
    """exp((c/(4 d_distortion)) (1-lambda2) diam) for vertex-transitive
    graphs embedded with distortion ``d_distortion``."""
    if not (diam >= 1.0):
        raise InvalidParameterError(f"diam must be >= 1, got {diam}")
    if not (d_distortion >= 1.0):
        raise InvalidParameterError(f"d_distortion must be >= 1, got {d_distortion}")
    if not (c > 0.0):
        raise InvalidParameterError(f"c must be > 0, got {c}")
    gap = _check_gap(lambda2)
    return math.exp((c / (4.0 * d_distortion)) * gap * diam)


def distortion_lower_vs_dx(diam: float, d_x: float) -> float:
    """diam / log(2 d_x): the distortion floor for embedding a graph of
    this diameter into a space at Euclidean distance ``d_x`` (constant
    slot normalized to 1, callers scale)."""
    if not (diam >= 1.0):
        raise InvalidParameterError(f"diam must be >= 1, got {diam}")
    if not (d_x >= 1.0):
        raise InvalidParameterError(f"d_x must be >= 1, got {d_x}")
    return diam / math.log(2.0 * d_x)


@dataclass(frozen=True)
class ProfileRow:
    """One exponent's entry of the extrapolation profile."""

    p: float
    pairs_avg: float
    edge_avg: float
    ratio: float
    root: float
    normalized: float


def matousek_extrapolation_profile(
    a: StochasticMatrix, cfg: PointConfig, p_list: list[float]
) -> list[ProfileRow]:
    """p-th moment ratio profile of a line configuration.

    For each exponent p the row records both averages (all-pairs with the
    1/n^2 normalization, edge with the 1/n stochastic-matrix
    normalization), their ratio, ratio^(1/p), and ratio^(1/p)/p.  The last
    column is the extrapolation-normalized quantity expected to stay
    bounded by a universal constant as p grows.
    """
    if cfg.space.dim != 1:
        raise InvalidParameterError("profile needs a one-dimensional configuration")
    rows = []
    for p in p_list:
        if not (p >= 1.0):
            raise InvalidParameterError(f"profile exponents must be >= 1, got {p}")
        rep = poincare_ratio(a, cfg, p)
        root = rep.ratio ** (1.0 / p)
        rows.append(
            ProfileRow(
                p=p,
                pairs_avg=rep.numerator,
                edge_avg=rep.denominator,
                ratio=rep.ratio,
                root=root,
                normalized=root / p,
            )
        )
    return rows


def effective_constant(dim: int, n: int, lambda2: float, ratio: float) -> float:
    """log(2 dim) sqrt(n) / ((1-lambda2) sqrt(ratio)).

    Inverts :func:`dimension_lower_bound`: the smallest constant slot that
    makes the bound tight for an observed (dim, n, lambda2, ratio)
    instance.  Plugging the result back in recovers dim exactly.
    """
    if dim < 1:
        raise InvalidParameterError(f"dim must be >= 1, got {dim}")
    if n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    gap = _check_gap(lambda2)
    if not (ratio > 0.0):
        raise DegenerateConfigurationError(f"ratio must be > 0, got {ratio}")
    return math.log(2.0 * dim) * math.sqrt(n) / (gap * math.sqrt(ratio))
