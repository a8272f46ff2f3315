"""Small numerical kernels: Perron eigenpairs and subspace projectors."""

from __future__ import annotations

import numpy as np


class ConvergenceError(ArithmeticError):
    """Raised when an iterative eigenvalue computation fails to settle."""


def perron_eigenpair(
    matrix,
    rq_tol: float = 1e-14,
    residual_tol: float = 1e-12,
    max_iter: int = 100_000,
) -> tuple[float, np.ndarray]:
    """Dominant eigenvalue and positive eigenvector of a nonnegative matrix.

    Power iteration from the all-ones vector, run on ``matrix + I``: the
    unit shift breaks the +/- eigenvalue tie of bipartite supports (for
    which the raw Rayleigh quotient is stationary at a wrong value)
    without moving the Perron eigenvector.  Converged when successive
    Rayleigh quotients differ by less than ``rq_tol`` and the iterate
    residual is below ``residual_tol``.
    """
    mat = np.asarray(matrix, dtype=float)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    shifted = mat + np.eye(n)
    vec = np.ones(n) / np.sqrt(n)
    rq_prev = np.inf
    for _ in range(max_iter):
        image = shifted @ vec
        norm = float(np.linalg.norm(image))
        if norm == 0.0:
            raise ConvergenceError("power iteration collapsed to the zero vector")
        vec = image / norm
        image = shifted @ vec
        rq = float(vec @ image)
        if abs(rq - rq_prev) < rq_tol and np.max(np.abs(image - rq * vec)) < residual_tol:
            return rq - 1.0, vec
        rq_prev = rq
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


def subspace_projector(vectors) -> np.ndarray:
    """Orthogonal projector onto the span of the given row vectors."""
    rows = np.atleast_2d(np.asarray(vectors, dtype=float))
    if rows.size == 0:
        raise ValueError("cannot project onto an empty span")
    q, _ = np.linalg.qr(rows.T)
    return q @ q.T


def matrix_order(matrix, cap: int = 1000, tol: float = 1e-8) -> int:
    """Smallest k >= 1 with matrix**k == I within ``tol`` in max norm."""
    mat = np.asarray(matrix, dtype=float)
    n = mat.shape[0]
    eye = np.eye(n)
    power = eye
    for k in range(1, cap + 1):
        power = power @ mat
        if np.max(np.abs(power - eye)) < tol:
            return k
    raise ConvergenceError(f"matrix order exceeds cap {cap}; input may not be of finite order")
