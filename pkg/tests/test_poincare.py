"""Poincare ratios: exact identities, invariances, and the line maximizer."""

import numpy as np
import pytest
from conftest import random_symmetric_stochastic

from gapscope import (
    DegenerateConfigurationError,
    DisconnectedMatrixError,
    DisconnectedSupportError,
    OptimizerConfig,
    PointConfig,
    StochasticMatrix,
    complete_graph,
    cycle_graph,
    gamma_line_exact,
    hypercube_graph,
    lp_space,
    matousek_extrapolation_profile,
    maximize_poincare_ratio,
    normalized_adjacency,
    poincare_ratio,
    random_regular_graph,
    second_eigenvector,
)

LINE = lp_space(1, 2.0)


def line_config(values) -> PointConfig:
    return PointConfig(np.asarray(values, dtype=float).reshape(-1, 1), LINE)


def two_point_matrix() -> StochasticMatrix:
    return StochasticMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_two_point_ratio_is_half():
    r = poincare_ratio(two_point_matrix(), line_config([0.0, 1.0]), 2.0)
    assert r.ratio == pytest.approx(0.5, abs=1e-15)
    assert r.ratio == pytest.approx(r.numerator / r.denominator, abs=1e-15)


@pytest.mark.parametrize("p", [1.0, 2.0, 4.0, 16.0])
def test_two_point_ratio_for_every_exponent(p):
    # |t1 - t2|^p cancels between the two averages, leaving n-choose-2 bookkeeping
    r = poincare_ratio(two_point_matrix(), line_config([-3.0, 7.0]), p)
    assert r.ratio == pytest.approx(0.5, abs=1e-14)


def test_c6_eigenvector_ratio():
    a = normalized_adjacency(cycle_graph(6))
    _, v = second_eigenvector(a)
    r = poincare_ratio(a, line_config(v), 2.0)
    assert r.ratio == pytest.approx(2.0, abs=1e-9)


def test_eigenvector_attains_line_gamma():
    for make in (lambda: cycle_graph(8), lambda: complete_graph(5),
                 lambda: hypercube_graph(3),
                 lambda: random_regular_graph(20, 3, seed=6)):
        a = normalized_adjacency(make())
        lam, v = second_eigenvector(a)
        r = poincare_ratio(a, line_config(v), 2.0)
        assert r.ratio == pytest.approx(1.0 / (1.0 - lam), rel=1e-9)


def test_gamma_line_exact_against_lapack():
    rng = np.random.default_rng(13)
    for _ in range(20):
        a = random_symmetric_stochastic(int(rng.integers(2, 11)), rng)
        lam = float(np.sort(np.linalg.eigvalsh(a.a))[-2])
        assert gamma_line_exact(a) == pytest.approx(1.0 / (1.0 - lam), rel=1e-9)


def test_ratio_invariances():
    rng = np.random.default_rng(29)
    space = lp_space(3, 2.0)
    for _ in range(10):
        n = int(rng.integers(3, 9))
        a = random_symmetric_stochastic(n, rng)
        pts = rng.normal(size=(n, 3))
        base = poincare_ratio(a, PointConfig(pts, space), 2.0).ratio
        shifted = poincare_ratio(a, PointConfig(pts + rng.normal(size=3), space), 2.0).ratio
        scaled = poincare_ratio(a, PointConfig(pts * 3.7, space), 2.0).ratio
        perm = rng.permutation(n)
        conj = StochasticMatrix(a.a[np.ix_(perm, perm)])
        permuted = poincare_ratio(conj, PointConfig(pts[perm], space), 2.0).ratio
        assert shifted == pytest.approx(base, rel=1e-12)
        assert scaled == pytest.approx(base, rel=1e-12)
        assert permuted == pytest.approx(base, rel=1e-12)


def test_degenerate_configuration_rejected():
    a = normalized_adjacency(cycle_graph(4))
    with pytest.raises(DegenerateConfigurationError):
        poincare_ratio(a, line_config([2.0, 2.0, 2.0, 2.0]), 2.0)


def test_disconnected_support_detected():
    # constant on each block of a disconnected matrix, not globally constant
    a = np.zeros((4, 4))
    a[0, 1] = a[1, 0] = 1.0
    a[2, 3] = a[3, 2] = 1.0
    with pytest.raises(DisconnectedSupportError):
        poincare_ratio(StochasticMatrix(a), line_config([0.0, 0.0, 1.0, 1.0]), 2.0)


def test_disconnected_matrix_has_no_line_gamma():
    a = np.zeros((4, 4))
    a[0, 1] = a[1, 0] = 1.0
    a[2, 3] = a[3, 2] = 1.0
    m = StochasticMatrix(a)
    with pytest.raises(DisconnectedMatrixError):
        gamma_line_exact(m)
    with pytest.raises(DisconnectedMatrixError):
        maximize_poincare_ratio(m, LINE, 2.0, OptimizerConfig(restarts=1, steps=10))


def test_maximizer_brackets_line_gamma():
    opt = OptimizerConfig(restarts=6, steps=400, seed=1)
    for make in (lambda: cycle_graph(6), lambda: complete_graph(4),
                 lambda: random_regular_graph(16, 3, seed=0)):
        a = normalized_adjacency(make())
        oracle = gamma_line_exact(a)
        _, rep = maximize_poincare_ratio(a, LINE, 2.0, opt)
        assert rep.ratio >= 0.99 * oracle
        assert rep.ratio <= oracle + 1e-6


def test_maximizer_deterministic_given_seed():
    a = normalized_adjacency(cycle_graph(5))
    opt = OptimizerConfig(restarts=3, steps=150, seed=9)
    cfg1, r1 = maximize_poincare_ratio(a, LINE, 2.0, opt)
    cfg2, r2 = maximize_poincare_ratio(a, LINE, 2.0, opt)
    assert r1.ratio == r2.ratio
    assert np.array_equal(cfg1.points, cfg2.points)


def test_profile_two_point_identity():
    rows = matousek_extrapolation_profile(
        two_point_matrix(), line_config([0.0, 5.0]), [1.0, 2.0, 8.0])
    for row in rows:
        assert row.ratio == pytest.approx(0.5, abs=1e-14)
        assert row.root == pytest.approx(0.5 ** (1.0 / row.p), abs=1e-14)
        assert row.normalized == pytest.approx(row.root / row.p, abs=1e-14)


def test_profile_c6_eigenvector():
    a = normalized_adjacency(cycle_graph(6))
    _, v = second_eigenvector(a)
    rows = matousek_extrapolation_profile(a, line_config(v), [2.0, 4.0, 8.0, 16.0])
    assert rows[0].normalized == pytest.approx(np.sqrt(2.0) / 2.0, abs=1e-9)
    for row in rows:
        assert row.normalized <= 1.5


def test_profile_rejects_degenerate_config():
    a = normalized_adjacency(cycle_graph(4))
    with pytest.raises(DegenerateConfigurationError):
        matousek_extrapolation_profile(a, line_config([1.0, 1.0, 1.0, 1.0]), [2.0])


def test_size_mismatch_rejected():
    a = normalized_adjacency(cycle_graph(4))
    from gapscope import InvalidParameterError
    with pytest.raises(InvalidParameterError):
        poincare_ratio(a, line_config([0.0, 1.0]), 2.0)
