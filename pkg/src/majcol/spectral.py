"""Row-stochastic out-neighbour matrix of a digraph and its left Perron vector.

A matrix is kept in the factored form

    entries[i] = (1 - mix[i]) * base[i] + mix[i] * U[i],

where ``base`` is sparse with zero diagonal and ``U`` is the uniform
off-diagonal matrix ``(J - I) / (n - 1)``.  The factored form lets the solver
use the (dense) perturbed matrix through sparse adjacency operations only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .graph import Digraph

__all__ = [
    "RowStochasticMatrix",
    "PerronWeights",
    "PerronConvergenceError",
    "matrix_from_digraph",
    "pad_and_perturb",
    "perron_left_vector",
    "default_max_iter",
]

# dense squaring is only attempted below this order
_DENSE_LIMIT = 4000
_PLAIN_STEPS = 200


class PerronConvergenceError(RuntimeError):
    def __init__(self, residual: float, iterations: int):
        super().__init__(
            f"power iteration did not reach the tolerance after {iterations} steps "
            f"(best residual {residual:.3e})"
        )
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class RowStochasticMatrix:
    """Non-negative ``n x n`` matrix with zero diagonal and row sums at most 1.

    Attributes
    ----------
    base : scipy.sparse.csr_array
        Sparse part, zero diagonal.
    mix : (n,) ndarray
        Per-row weight of the uniform off-diagonal row.
    sinks : (n,) bool ndarray
        Rows that were all-zero in the unpadded matrix.
    """

    base: sparse.csr_array
    mix: np.ndarray
    sinks: np.ndarray

    @property
    def n(self) -> int:
        return self.base.shape[0]

    @classmethod
    def from_dense(cls, a) -> "RowStochasticMatrix":
        a = np.array(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        if np.any(np.diag(a) != 0):
            raise ValueError("diagonal entries must be zero")
        if np.any(a < 0):
            raise ValueError("entries must be non-negative")
        if np.any(a.sum(axis=1) > 1 + 1e-12):
            raise ValueError("row sums must not exceed 1")
        n = a.shape[0]
        return cls(sparse.csr_array(a), np.zeros(n), a.sum(axis=1) == 0)

    def toarray(self) -> np.ndarray:
        n = self.n
        dense = self.base.toarray() * (1 - self.mix)[:, None]
        if n > 1:
            dense += (self.mix / (n - 1))[:, None]
            np.fill_diagonal(dense, 0.0)
        return dense

    def row_sums(self) -> np.ndarray:
        base_sums = np.asarray(self.base.sum(axis=1)).reshape(-1)
        uniform = 1.0 if self.n > 1 else 0.0
        return (1 - self.mix) * base_sums + self.mix * uniform

    def min_offdiag(self) -> float:
        if self.n < 2:
            return math.inf
        dense = self.toarray()
        np.fill_diagonal(dense, np.inf)
        return float(dense.min())

    def left_mul(self, u: np.ndarray) -> np.ndarray:
        """Row vector times matrix, ``u @ entries``, in O(nnz + n)."""
        n = self.n
        out = self.base.T @ (u * (1 - self.mix))
        if n > 1:
            w = u * self.mix
            out = out + (w.sum() - w) / (n - 1)
        return out


@dataclass(frozen=True)
class PerronWeights:
    u: np.ndarray
    residual: float
    iterations: int


def matrix_from_digraph(D: Digraph) -> RowStochasticMatrix:
    """``a_ij = 1 / d+(i)`` for every arc ``i -> j``; sink rows are zero."""
    deg = D.out_deg
    data = 1.0 / deg[D.sources]
    base = sparse.csr_array((data, D.indices, D.indptr), shape=(D.n, D.n))
    return RowStochasticMatrix(base, np.zeros(D.n), deg == 0)


def pad_and_perturb(A: RowStochasticMatrix, eps: float = 1e-9) -> RowStochasticMatrix:
    """Raise entries until every row sums to 1 and every off-diagonal entry is positive.

    Non-zero rows of ``base`` are scaled up to sum 1; all-zero rows become the
    uniform off-diagonal row.  Each row is then mixed with the uniform row at
    weight ``eps``, which already puts every off-diagonal entry at or above
    ``eps / (n - 1) > eps / n``, so ``eps`` is the smallest admissible weight.
    """
    n = A.n
    if n < 2:
        raise ValueError("perturbation needs at least two vertices")
    if not 0 < eps < 1 / n:
        raise ValueError(f"eps must lie in (0, 1/n) = (0, {1 / n}), got {eps}")
    base = sparse.csr_array(A.base, copy=True)
    sums = np.asarray(base.sum(axis=1)).reshape(-1)
    # rows with mix == 1 are already the uniform row whatever base holds
    empty = (sums <= 0) | (A.mix >= 1)
    scale = np.where(empty, 0.0, 1.0 / np.where(sums > 0, sums, 1.0))
    base = sparse.csr_array(sparse.diags_array(scale) @ base)
    base.eliminate_zeros()
    mix = np.where(empty, 1.0, 1 - (1 - eps) * (1 - A.mix))
    return RowStochasticMatrix(base, mix, A.sinks.copy())


def default_max_iter(n: int) -> int:
    return int(10 * n * math.log(max(n, 1))) + 10000


def _residual(A: RowStochasticMatrix, u: np.ndarray) -> float:
    return float(np.abs(A.left_mul(u) - u).sum())


def perron_left_vector(
    A: RowStochasticMatrix, tol: float = 1e-12, max_iter: int | None = None
) -> PerronWeights:
    """Positive left eigenvector ``u`` with ``u A = u`` and ``sum(u) = 1``.

    Power iteration from the uniform vector.  A near-decomposable or
    near-periodic matrix (the perturbation is tiny) makes plain iteration
    crawl, so after a short plain phase the iteration switches to repeated
    squaring: ``u <- u M`` with ``M`` running through ``A, A^2, A^4, ...``.
    Both phases share the stopping rule ``||u A - u||_1 <= tol``.
    """
    n = A.n
    if n == 0:
        return PerronWeights(np.zeros(0), 0.0, 0)
    if n == 1:
        return PerronWeights(np.ones(1), 0.0, 0)
    if not A.min_offdiag() > 0:
        raise ValueError("matrix must be strictly positive off the diagonal")
    if np.max(np.abs(A.row_sums() - 1)) > 1e-12:
        raise ValueError("matrix rows must sum to 1")
    max_iter = default_max_iter(n) if max_iter is None else max_iter

    u = np.full(n, 1.0 / n)
    best = (math.inf, u)
    it = 0
    while it < min(max_iter, _PLAIN_STEPS):
        v = A.left_mul(u)
        res = float(np.abs(v - u).sum())
        if res < best[0]:
            best = (res, u)
        if res <= tol:
            return PerronWeights(u, res, it)
        u = v / v.sum()
        it += 1

    if n <= _DENSE_LIMIT:
        M = A.toarray()
        while it < max_iter:
            res = _residual(A, u)
            if res < best[0]:
                best = (res, u)
            if res <= tol:
                return PerronWeights(u, res, it)
            u = u @ M
            u /= u.sum()
            M = M @ M
            M /= M.sum(axis=1, keepdims=True)
            it += 1
    else:
        while it < max_iter:
            v = A.left_mul(u)
            res = float(np.abs(v - u).sum())
            if res < best[0]:
                best = (res, u)
            if res <= tol:
                return PerronWeights(u, res, it)
            u = v / v.sum()
            it += 1
    raise PerronConvergenceError(best[0], it)
