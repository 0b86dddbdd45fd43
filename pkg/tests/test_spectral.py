"""Eigensolver checks against closed forms and a dense LAPACK cross-oracle."""

import math

import numpy as np
import pytest
from conftest import random_symmetric_stochastic

from gapscope import (
    InvalidMatrixError,
    StochasticMatrix,
    complete_graph,
    cycle_graph,
    full_spectrum,
    hypercube_graph,
    normalized_adjacency,
    random_regular_graph,
    second_eigenvalue,
    second_eigenvector,
    spectral_gap,
)


def lapack_second_largest(a: StochasticMatrix) -> float:
    # reference route: full symmetric eigendecomposition
    return float(np.sort(np.linalg.eigvalsh(a.a))[-2])


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 12, 17, 32, 64])
def test_cycle_lambda2_closed_form(n):
    a = normalized_adjacency(cycle_graph(n))
    assert second_eigenvalue(a) == pytest.approx(math.cos(2 * math.pi / n), abs=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4, 7, 16, 32])
def test_complete_lambda2_closed_form(n):
    a = normalized_adjacency(complete_graph(n))
    assert second_eigenvalue(a) == pytest.approx(-1.0 / (n - 1), abs=1e-9)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 7, 10])
def test_hypercube_lambda2_closed_form(d):
    a = normalized_adjacency(hypercube_graph(d))
    assert second_eigenvalue(a) == pytest.approx(1.0 - 2.0 / d, abs=1e-9)


def test_k2_full_spectrum():
    spec = full_spectrum(normalized_adjacency(complete_graph(2)))
    np.testing.assert_allclose(spec.eigenvalues, [1.0, -1.0], atol=1e-12)


def test_c4_full_spectrum():
    spec = full_spectrum(normalized_adjacency(cycle_graph(4)))
    np.testing.assert_allclose(spec.eigenvalues, [1.0, 0.0, 0.0, -1.0], atol=1e-12)


@pytest.mark.parametrize("make", [
    lambda: normalized_adjacency(cycle_graph(10)),
    lambda: normalized_adjacency(hypercube_graph(4)),
    lambda: normalized_adjacency(random_regular_graph(40, 3, seed=3)),
])
def test_full_spectrum_contract(make):
    a = make()
    spec = full_spectrum(a)
    eig = np.asarray(spec.eigenvalues)
    assert eig.shape == (a.n,)
    assert np.all(np.diff(eig) <= 1e-12)  # sorted descending
    assert eig[0] == pytest.approx(1.0, abs=1e-10)
    # loopless graphs have zero trace
    assert abs(eig.sum()) <= 1e-8
    assert spec.residual <= 1e-8
    assert spec.gap == pytest.approx(1.0 - eig[1], abs=1e-12)


def test_second_eigenvalue_matches_lapack_on_random_graphs():
    for seed, (n, k) in enumerate([(20, 3), (50, 4), (100, 3), (200, 4)]):
        a = normalized_adjacency(random_regular_graph(n, k, seed=seed))
        assert second_eigenvalue(a) == pytest.approx(lapack_second_largest(a), abs=1e-10)


def test_second_eigenvalue_matches_lapack_on_dense_stochastic():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = random_symmetric_stochastic(int(rng.integers(2, 13)), rng)
        assert second_eigenvalue(a) == pytest.approx(lapack_second_largest(a), abs=1e-10)


def test_second_eigenvector_residual_and_orthogonality():
    for make in (lambda: cycle_graph(9), lambda: hypercube_graph(3),
                 lambda: random_regular_graph(24, 3, seed=11)):
        a = normalized_adjacency(make())
        lam, v = second_eigenvector(a)
        assert np.linalg.norm(a.a @ v - lam * v) <= 1e-8
        assert abs(v.sum()) <= 1e-8  # orthogonal to the constant top eigenvector
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
        assert lam == pytest.approx(second_eigenvalue(a), abs=1e-12)


def test_disconnected_matrix_has_zero_gap():
    a = np.zeros((4, 4))
    a[0, 1] = a[1, 0] = 1.0
    a[2, 3] = a[3, 2] = 1.0
    m = StochasticMatrix(a)
    assert second_eigenvalue(m) == pytest.approx(1.0, abs=1e-9)
    assert spectral_gap(m) == pytest.approx(0.0, abs=1e-9)


def test_spectral_gap_is_one_minus_lambda2():
    a = normalized_adjacency(cycle_graph(6))
    assert spectral_gap(a) == pytest.approx(1.0 - second_eigenvalue(a), abs=1e-14)


def test_matrix_validation_rejects_garbage():
    with pytest.raises(InvalidMatrixError):
        StochasticMatrix(np.array([[0.0, 1.0], [0.5, 0.5]]))  # asymmetric
    with pytest.raises(InvalidMatrixError):
        StochasticMatrix(np.array([[0.5, 0.4], [0.4, 0.5]]))  # row sums != 1
    with pytest.raises(InvalidMatrixError):
        StochasticMatrix(np.array([[1.5, -0.5], [-0.5, 1.5]]))  # negative entry
    with pytest.raises(InvalidMatrixError):
        StochasticMatrix(np.zeros((2, 3)))
