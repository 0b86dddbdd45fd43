import numpy as np

from gapscope import StochasticMatrix


def random_symmetric_stochastic(n: int, rng: np.random.Generator) -> StochasticMatrix:
    """A dense symmetric matrix with exact unit row sums, via symmetric scaling.

    Iterating a <- D^{-1/2} a D^{-1/2} preserves symmetry and drives the row
    sums to 1; the strictly positive start guarantees convergence well below
    the constructor's row-sum tolerance.
    """
    a = rng.uniform(0.1, 1.0, size=(n, n))
    a = (a + a.T) / 2.0
    for _ in range(500):
        d = a.sum(axis=1)
        if np.max(np.abs(d - 1.0)) < 1e-14:
            break
        scale = 1.0 / np.sqrt(d)
        a = a * scale[:, None] * scale[None, :]
    return StochasticMatrix(a)
