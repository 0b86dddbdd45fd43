"""Norm evaluation, MVEE, Euclidean-distance estimates, smoothness/convexity.

The polytope gauge has an independent oracle here: a linear program over
convex combinations of the vertices (min sum of coefficients reproducing x).
Both routes must agree; neither is derived from the other.
"""

import math

import numpy as np
import pytest
from scipy.optimize import linprog

from gapscope import (
    InvalidMatrixError,
    InvalidParameterError,
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

SQUARE = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])
CROSS = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])


def lp_gauge_oracle(vertices: np.ndarray, x: np.ndarray) -> float:
    """gauge(x) = min { sum(lam) : V^T lam = x, lam >= 0 }."""
    m = vertices.shape[0]
    res = linprog(
        c=np.ones(m),
        A_eq=vertices.T,
        b_eq=np.asarray(x, dtype=float),
        bounds=[(0, None)] * m,
        method="highs",
    )
    assert res.status == 0, res.message
    return float(res.fun)


def sample_spaces():
    return [
        lp_space(2, 2.0),
        lp_space(3, 1.0),
        lp_space(2, math.inf),
        lp_space(4, 3.0),
        polytope_space(SQUARE),
        polytope_space(CROSS),
        quadratic_space(np.array([[2.0, 0.5], [0.5, 1.0]])),
    ]


def test_lp_norm_frozen_examples():
    assert norm(lp_space(2, 2.0), [3.0, 4.0]) == pytest.approx(5.0, abs=1e-12)
    assert norm(lp_space(2, 1.0), [1.0, -2.0]) == pytest.approx(3.0, abs=1e-12)
    assert norm(lp_space(2, math.inf), [1.0, -2.0]) == pytest.approx(2.0, abs=1e-12)


def test_cross_polytope_gauge():
    assert norm(polytope_space(CROSS), [0.5, 0.5]) == pytest.approx(1.0, abs=1e-6)


def test_quadratic_norms():
    q = quadratic_space(np.diag([1.0, 4.0]))
    assert norm(q, [1.0, 0.0]) == pytest.approx(1.0, abs=1e-12)
    assert norm(q, [0.0, 1.0]) == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("vertices", [SQUARE, CROSS])
def test_polytope_gauge_matches_lp_oracle(vertices):
    space = polytope_space(vertices)
    rng = np.random.default_rng(3)
    for _ in range(40):
        x = rng.normal(size=2)
        assert norm(space, x) == pytest.approx(lp_gauge_oracle(vertices, x), abs=1e-6)


def test_polytope_gauge_matches_lp_oracle_3d():
    rng = np.random.default_rng(8)
    pts = rng.normal(size=(6, 3))
    vertices = np.vstack([pts, -pts])
    space = polytope_space(vertices)
    for _ in range(25):
        x = rng.normal(size=3)
        assert norm(space, x) == pytest.approx(lp_gauge_oracle(vertices, x), abs=1e-6)


def test_norm_axioms_random():
    rng = np.random.default_rng(11)
    for space in sample_spaces():
        for _ in range(150):
            x = rng.normal(size=space.dim)
            y = rng.normal(size=space.dim)
            t = float(rng.uniform(-3.0, 3.0))
            nx, ny = norm(space, x), norm(space, y)
            assert norm(space, t * x) == pytest.approx(abs(t) * nx, rel=1e-9, abs=1e-9)
            assert norm(space, x + y) <= nx + ny + 1e-9 * max(1.0, nx + ny)
        assert norm(space, np.zeros(space.dim)) == 0.0


def test_norm_gradient_first_order():
    rng = np.random.default_rng(23)
    h = 1e-6
    for space in (lp_space(3, 2.0), lp_space(2, 4.0),
                  quadratic_space(np.array([[2.0, 0.5], [0.5, 1.0]]))):
        for _ in range(20):
            x = rng.normal(size=space.dim)
            if norm(space, x) < 0.5:
                continue
            grad = norm_gradient(space, x)
            for i in range(space.dim):
                e = np.zeros(space.dim)
                e[i] = h
                fd = (norm(space, x + e) - norm(space, x - e)) / (2 * h)
                assert grad[i] == pytest.approx(fd, abs=1e-5)


def test_gradient_euler_identity():
    # one-homogeneity forces <grad, x> = norm(x)
    rng = np.random.default_rng(5)
    for space in (lp_space(2, 2.0), lp_space(3, 1.5), polytope_space(SQUARE)):
        for _ in range(20):
            x = rng.normal(size=space.dim)
            if norm(space, x) < 0.5:
                continue
            g = norm_gradient(space, x)
            assert float(g @ x) == pytest.approx(norm(space, x), rel=1e-6)


def test_mvee_square_is_circle_radius_sqrt2():
    m, gap = mvee_ellipsoid(SQUARE)
    np.testing.assert_allclose(m, np.eye(2) / 2.0, atol=1e-5)
    assert gap <= 1e-7


def test_mvee_contains_inputs():
    rng = np.random.default_rng(19)
    for dim in (2, 3, 5):
        pts = rng.normal(size=(12, dim))
        cloud = np.vstack([pts, -pts])
        m, _ = mvee_ellipsoid(cloud)
        quad = np.einsum("ij,jk,ik->i", cloud, m, cloud)
        assert np.max(quad) <= 1.0 + 1e-6


def test_hilbert_distance_euclidean_is_exact():
    r = hilbert_distance(lp_space(7, 2.0))
    assert r.lower == 1.0 and r.upper == 1.0


def test_hilbert_distance_linf4():
    r = hilbert_distance(lp_space(4, math.inf), samples=2000, seed=0)
    assert r.upper == pytest.approx(2.0, abs=1e-6)
    assert r.lower == pytest.approx(2.0, abs=1e-6)


def test_hilbert_distance_square_polytope():
    r = hilbert_distance(polytope_space(SQUARE), samples=2000, seed=0)
    assert r.lower == pytest.approx(math.sqrt(2.0), abs=1e-5)
    assert r.upper == pytest.approx(math.sqrt(2.0), abs=1e-5)


def test_hilbert_distance_john_sandwich():
    for space in sample_spaces():
        r = hilbert_distance(space, samples=500, seed=1)
        assert 1.0 - 1e-9 <= r.lower <= r.upper + 1e-9
        assert r.upper <= math.sqrt(space.dim) + 1e-6


def test_smoothness_hilbert_p2_is_one():
    r = smoothness_estimate(lp_space(3, 2.0), 2.0, trials=60, seed=0)
    assert r.s_lower == pytest.approx(1.0, abs=1e-6)


def test_smoothness_p1_is_one_everywhere():
    # the p=1 two-point inequality is the triangle inequality: constant 1 exactly
    for space in sample_spaces():
        r = smoothness_estimate(space, 1.0, trials=40, seed=2)
        assert r.s_lower <= 1.0 + 1e-9


def test_smoothness_linf2_witness():
    r = smoothness_estimate(lp_space(2, math.inf), 2.0, trials=60, seed=0)
    assert r.s_lower >= math.sqrt(3.0) - 1e-6


def test_smoothness_witness_recomputes():
    for space in (lp_space(2, math.inf), lp_space(2, 1.5), polytope_space(CROSS)):
        r = smoothness_estimate(space, 2.0, trials=40, seed=7)
        x, y = np.asarray(r.witness_x), np.asarray(r.witness_y)
        ny = norm(space, y)
        assert ny > 0
        attained = ((norm(space, x + y) ** 2 + norm(space, x - y) ** 2
                     - 2 * norm(space, x) ** 2) / (2 * ny**2)) ** 0.5
        assert attained == pytest.approx(r.s_lower, rel=1e-9)


def test_convexity_hilbert_q2_is_one():
    r = convexity_estimate(lp_space(3, 2.0), 2.0, trials=60, seed=0)
    assert r.k_lower == pytest.approx(1.0, abs=1e-6)


def test_convexity_l1_q2():
    r = convexity_estimate(lp_space(2, 1.0), 2.0, trials=100, seed=0)
    assert r.k_lower >= math.sqrt(2.0) - 1e-6


def test_convexity_flat_sphere_is_infinite():
    # a polytope sphere has flat spots: no finite q-convexity constant
    r = convexity_estimate(polytope_space(SQUARE), 2.0, trials=40, seed=0)
    assert math.isinf(r.k_lower)


def test_convexity_witness_recomputes():
    # needs a uniformly convex space so the certified constant is finite
    space = lp_space(2, 1.5)
    r = convexity_estimate(space, 2.0, trials=60, seed=3)
    assert math.isfinite(r.k_lower)
    x, y = np.asarray(r.witness_x), np.asarray(r.witness_y)
    denom = norm(space, x + y) ** 2 + norm(space, x - y) ** 2 - 2 * norm(space, x) ** 2
    attained = (2 * norm(space, y) ** 2 / denom) ** 0.5
    assert attained == pytest.approx(r.k_lower, rel=1e-9)


def test_space_dict_round_trip():
    rng = np.random.default_rng(31)
    for space in sample_spaces():
        clone = space_from_dict(space_to_dict(space))
        assert clone.kind == space.kind and clone.dim == space.dim
        for _ in range(25):
            x = rng.normal(size=space.dim)
            assert norm(clone, x) == pytest.approx(norm(space, x), rel=1e-12, abs=1e-12)


def test_validation_errors():
    with pytest.raises(InvalidParameterError):
        lp_space(0, 2.0)
    with pytest.raises(InvalidParameterError):
        lp_space(2, 0.5)
    with pytest.raises(InvalidParameterError):
        polytope_space(np.array([[1.0, 0.0], [0.0, 1.0]]))  # not symmetric
    with pytest.raises(InvalidMatrixError):
        quadratic_space(np.array([[1.0, 0.0], [0.0, -1.0]]))  # not PSD
    with pytest.raises(InvalidParameterError):
        norm(lp_space(2, 2.0), [1.0, 2.0, 3.0])  # dimension mismatch
