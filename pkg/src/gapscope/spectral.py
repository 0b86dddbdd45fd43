"""Eigenvalues of symmetric stochastic matrices.

Two independent routes are kept side by side on purpose:

* :func:`full_spectrum` runs cyclic Jacobi rotations to machine-level
  off-diagonal norm and is the ground truth (all eigenvalues, eigenvectors,
  residual certificate);
* :func:`second_eigenvalue` runs deflated power iteration on the half-lazy
  matrix ``(A + I) / 2`` and is the fast path for just the second eigenvalue,
  falling back to :func:`full_spectrum` if it fails to converge.

Cross-agreement between the two is part of the test contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._limits import check_size
from .errors import InvalidParameterError, NumericalFailureError
from .graphs import StochasticMatrix

__all__ = [
    "Spectrum",
    "full_spectrum",
    "full_eigensystem",
    "second_eigenvalue",
    "second_eigenvector",
    "spectral_gap",
]

#: Off-diagonal Frobenius norm at which Jacobi sweeps stop.
JACOBI_TOL = 1e-12
#: Residual cap enforced for matrices of size up to RESIDUAL_CHECK_N.
RESIDUAL_TOL = 1e-8
RESIDUAL_CHECK_N = 2000

POWER_TOL = 1e-12
POWER_MAX_ITERATIONS = 1_000_000

_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    """All eigenvalues of a symmetric stochastic matrix, sorted descending.

    ``gap`` is ``1 - eigenvalues[1]`` and ``residual`` is the largest
    infinity-norm defect ``max_i |A v_i - lambda_i v_i|`` over the computed
    eigenpairs.
    """

    eigenvalues: np.ndarray
    gap: float = field(init=False)
    residual: float = 0.0

    def __post_init__(self) -> None:
        w = np.asarray(self.eigenvalues, dtype=np.float64)
        if w.ndim != 1 or w.size < 2:
            raise InvalidParameterError("a spectrum needs at least two eigenvalues")
        if np.any(np.diff(w) > 1e-12):
            raise InvalidParameterError("eigenvalues must be sorted in descending order")
        if abs(w[0] - 1.0) > 1e-10:
            raise NumericalFailureError(f"top eigenvalue {w[0]!r} is not 1 within 1e-10")
        if w[-1] < -1.0 - 1e-9 or w[0] > 1.0 + 1e-9:
            raise NumericalFailureError("eigenvalues leave [-1, 1] beyond tolerance")
        if self.residual < 0.0:
            raise InvalidParameterError("residual must be nonnegative")
        if w.size <= RESIDUAL_CHECK_N and self.residual > RESIDUAL_TOL:
            raise NumericalFailureError(
                f"eigenpair residual {self.residual:.3e} exceeds {RESIDUAL_TOL:.0e}"
            )
        w.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "gap", float(1.0 - w[1]))

    @property
    def n(self) -> int:
        return self.eigenvalues.size


def _jacobi_python(a: np.ndarray, v: np.ndarray, tol: float, max_sweeps: int) -> float:
    """Cyclic Jacobi on a copy of ``a``; accumulates rotations into ``v``.

    Vectorized row/column updates; returns the final off-diagonal norm.
    """
    n = a.shape[0]
    skip = tol / (10.0 * n)
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol:
            return off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))


def _jacobi_scalar(a, v, tol, max_sweeps):  # pragma: no cover - jitted twin of _jacobi_python
    n = a.shape[0]
    skip = tol / (10.0 * n)
    off = 0.0
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        off = math.sqrt(2.0 * off)
        if off <= tol:
            return off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    off = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            off += a[i, j] * a[i, j]
    return math.sqrt(2.0 * off)


try:  # the jitted kernel is a big win for n in the hundreds; plain numpy otherwise
    from numba import njit

    _jacobi_fast = njit(cache=False)(_jacobi_scalar)
except ImportError:  # pragma: no cover
    _jacobi_fast = None


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Diagonalize symmetric ``a``; returns (eigenvalues desc, vectors, residual)."""
    n = a.shape[0]
    work = np.array(a, dtype=np.float64)
    vectors = np.eye(n)
    if _jacobi_fast is not None:
        off = float(_jacobi_fast(work, vectors, JACOBI_TOL, _MAX_SWEEPS))
    else:
        off = float(_jacobi_python(work, vectors, JACOBI_TOL, _MAX_SWEEPS))
    if off > JACOBI_TOL:
        raise NumericalFailureError(
            f"Jacobi sweeps stalled at off-diagonal norm {off:.3e} (tol {JACOBI_TOL:.0e})"
        )
    w = np.diag(work).copy()
    order = np.argsort(-w, kind="stable")
    w = w[order]
    vectors = vectors[:, order]
    residual = float(np.max(np.abs(a @ vectors - vectors * w)))
    return w, vectors, residual


def full_spectrum(a: StochasticMatrix) -> Spectrum:
    """Every eigenvalue of ``a`` via cyclic Jacobi rotations.

    Raises
    ------
    InvalidParameterError
        If the matrix is 1 x 1 (no second eigenvalue exists).
    SizeLimitError
        If ``n`` exceeds the configured dense cap.
    NumericalFailureError
        If the sweeps stall or the residual certificate fails.
    """
    spectrum, _ = full_eigensystem(a)
    return spectrum


def full_eigensystem(a: StochasticMatrix) -> tuple[Spectrum, np.ndarray]:
    """Like :func:`full_spectrum` but also returns the eigenvector columns."""
    if a.n < 2:
        raise InvalidParameterError("full_spectrum needs n >= 2")
    check_size(a.n, "matrix size")
    w, vectors, residual = _jacobi(a.a)
    return Spectrum(eigenvalues=w, residual=residual), vectors


def _deflated_power(
    a: StochasticMatrix, tol: float, max_iterations: int
) -> tuple[float, np.ndarray, bool]:
    """Power iteration on (A + I)/2 with the constant eigenvector projected out.

    Returns (second eigenvalue of A, unit eigenvector estimate, converged).
    """
    n = a.n
    mat = a.a
    ones = np.full(n, 1.0 / math.sqrt(n))
    rng = np.random.Generator(np.random.PCG64(0x5EC0DE))
    v = rng.standard_normal(n)
    v -= (ones @ v) * ones
    norm = np.linalg.norm(v)
    if norm == 0.0:  # pragma: no cover - measure zero
        v = np.zeros(n)
        v[0] = 1.0
        v -= (ones @ v) * ones
        norm = np.linalg.norm(v)
    v /= norm
    mu = 0.0
    for _ in range(max_iterations):
        w = 0.5 * (mat @ v + v)
        w -= (ones @ w) * ones
        mu = float(v @ w)
        wn = float(np.linalg.norm(w))
        if wn < 1e-300:
            # (A + I)/2 annihilates the complement of the constants: lambda2 = -1.
            return -1.0, v, True
        residual = float(np.linalg.norm(w - mu * v))
        if residual <= tol:
            return 2.0 * mu - 1.0, w / wn, True
        v = w / wn
    return 2.0 * mu - 1.0, v, False


def second_eigenvalue(
    a: StochasticMatrix,
    tol: float = POWER_TOL,
    max_iterations: int = POWER_MAX_ITERATIONS,
) -> float:
    """Second-largest eigenvalue of ``a`` by deflated power iteration.

    Agrees with ``full_spectrum(a).eigenvalues[1]`` to 1e-10; if the
    iteration does not converge within the budget the dense route is used.
    """
    if a.n < 2:
        raise InvalidParameterError("second_eigenvalue needs n >= 2")
    lam, _, converged = _deflated_power(a, tol, max_iterations)
    if not converged:
        return float(full_spectrum(a).eigenvalues[1])
    return lam


def second_eigenvector(
    a: StochasticMatrix,
    tol: float = POWER_TOL,
    max_iterations: int = POWER_MAX_ITERATIONS,
) -> tuple[float, np.ndarray]:
    """Second eigenvalue together with a unit eigenvector estimate."""
    if a.n < 2:
        raise InvalidParameterError("second_eigenvector needs n >= 2")
    lam, v, converged = _deflated_power(a, tol, max_iterations)
    if not converged:
        spectrum, vectors = full_eigensystem(a)
        return float(spectrum.eigenvalues[1]), vectors[:, 1]
    return lam, v


def spectral_gap(a: StochasticMatrix) -> float:
    """``1 - lambda_2(a)``, the quantity every bound downstream consumes."""
    return 1.0 - second_eigenvalue(a)
