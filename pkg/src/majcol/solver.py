"""Constructive majority colourings, the random tournament experiment and exact search.

The list and partition solvers minimise the weighted potential

    Phi(f) = sum_r w_r * sum_{i, j in f^-1(r)} b_ij,      b_ij = u_i * a_ij,

where ``a`` is the perturbed row-stochastic out-neighbour matrix and ``u`` its
left Perron vector (``w_r = 1`` for lists, ``w_r = 1 / c_r`` for capacities).
At a local minimum each vertex ``i`` of colour ``r`` has
``sum_{j in f^-1(r)} b_ij <= 2 u_i / m`` (resp. ``2 u_i c_r``), which is the
majority bound after dividing by ``u_i``.  Floating-point weights only
approximate that argument, so every result is re-checked with integer
arithmetic and repaired before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy import sparse

from .graph import Digraph
from .spectral import (
    PerronWeights,
    RowStochasticMatrix,
    matrix_from_digraph,
    pad_and_perturb,
    perron_left_vector,
)
from .verify import (
    Colouring,
    ListAssignment,
    Violation,
    bad_vertices,
    check_fraction,
    monochrome_out_counts,
    respects_lists,
)

__all__ = [
    "SolverError",
    "RepairBudgetExceeded",
    "SearchBudgetExceeded",
    "NotATournament",
    "SearchWeights",
    "SearchState",
    "PotentialSearch",
    "ExperimentReport",
    "search_weights",
    "local_search_step",
    "partition_colouring",
    "list_colouring",
    "random_three_colouring",
    "exact_min_colours",
]

DELTA = 1e-12


class SolverError(RuntimeError):
    pass


class RepairBudgetExceeded(SolverError):
    def __init__(self, violations: list[Violation]):
        shown = ", ".join(
            f"v{x.vertex}: {x.same_colour_out} > {x.allowed}" for x in violations[:5]
        )
        super().__init__(f"{len(violations)} vertices still violate after repair ({shown})")
        self.violations = violations


class SearchBudgetExceeded(SolverError):
    pass


class NotATournament(ValueError):
    pass


@dataclass(frozen=True)
class SearchWeights:
    """``b_ij = alpha_i * a_ij + beta_i`` for ``i != j``.

    ``a`` is the scaled sparse part of the perturbed matrix, ``beta_i`` the
    share each off-diagonal entry of row ``i`` receives from the uniform mix.
    ``sym`` holds ``alpha_i a_ij + alpha_j a_ji``.
    """

    u: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    base: sparse.csr_array
    sym: sparse.csr_array
    perron: PerronWeights | None = None

    @property
    def n(self) -> int:
        return self.u.shape[0]

    @classmethod
    def from_matrix(cls, P: RowStochasticMatrix, pw: PerronWeights) -> "SearchWeights":
        n = P.n
        u = pw.u
        alpha = u * (1 - P.mix)
        beta = u * P.mix / (n - 1) if n > 1 else np.zeros(n)
        scaled = sparse.csr_array(sparse.diags_array(alpha) @ P.base)
        sym = sparse.csr_array(scaled + scaled.T)
        sym.sort_indices()
        return cls(u, alpha, beta, sparse.csr_array(P.base), sym, pw)

    def dense_b(self) -> np.ndarray:
        b = self.alpha[:, None] * self.base.toarray() + self.beta[:, None]
        np.fill_diagonal(b, 0.0)
        return b


def search_weights(
    D: Digraph, eps: float = 1e-9, tol: float = 1e-12, max_iter: int | None = None
) -> SearchWeights:
    n = D.n
    if n < 2:
        u = np.ones(n)
        empty = sparse.csr_array((n, n))
        return SearchWeights(u, u.copy(), np.zeros(n), empty, empty)
    P = pad_and_perturb(matrix_from_digraph(D), eps)
    return SearchWeights.from_matrix(P, perron_left_vector(P, tol, max_iter))


@dataclass
class SearchState:
    assignment: np.ndarray
    potential: float
    move_count: int = 0
    forced_moves: int = 0


class PotentialSearch:
    """Incremental local search on the (capacity-weighted) potential.

    For vertex ``i`` and palette slot ``c`` the search keeps
    ``Wsp[i, c] = sum_{j : f(j) = c} sym_ij``; the uniform-mix share of
    ``sum_{j in c, j != i} (b_ij + b_ji)`` is rebuilt on the fly from class sizes
    and class ``beta`` totals.

    Parameters
    ----------
    weights : SearchWeights
    lists : ListAssignment
        Admissible colours per vertex.
    class_weight : mapping colour id -> float, optional
        ``w_r`` in the potential; defaults to 1 for every colour.
    initial : sequence of colour ids, optional
        Starting assignment; defaults to the smallest colour of each list.
    delta : float
        Improvement margin; a move is taken only if it lowers the potential
        by more than ``delta``.
    """

    def __init__(
        self,
        weights: SearchWeights,
        lists: ListAssignment,
        class_weight: dict[int, float] | None = None,
        initial: Sequence[int] | None = None,
        delta: float = DELTA,
    ):
        n = weights.n
        if lists.n != n:
            raise ValueError(f"lists cover {lists.n} vertices, weights {n}")
        self.weights = weights
        self.lists = lists
        self.delta = delta
        self.palette = sorted({c for lst in lists.lists for c in lst})
        slot = {c: s for s, c in enumerate(self.palette)}
        self._slot = slot
        self.list_slots = [np.array([slot[c] for c in lst], dtype=np.int64) for lst in lists.lists]
        cw = class_weight or {}
        self.class_weight = np.array([float(cw.get(c, 1.0)) for c in self.palette])

        if initial is None:
            f = np.array([s[0] for s in self.list_slots], dtype=np.int64)
        else:
            f = np.array([slot[int(c)] for c in initial], dtype=np.int64)
            for i in range(n):
                if f[i] not in self.list_slots[i]:
                    raise ValueError(f"initial colour of vertex {i} is not in its list")
        self.f = f
        C = len(self.palette)
        onehot = np.zeros((n, C))
        onehot[np.arange(n), f] = 1.0
        self.Wsp = np.asarray(weights.sym @ onehot) if n else np.zeros((0, C))
        self.size = np.bincount(f, minlength=C).astype(float)
        self.bsum = np.bincount(f, weights=weights.beta, minlength=C)
        self._rows = [
            (weights.sym.indices[weights.sym.indptr[i]:weights.sym.indptr[i + 1]],
             weights.sym.data[weights.sym.indptr[i]:weights.sym.indptr[i + 1]])
            for i in range(n)
        ]
        self.state = SearchState(self.f, self.recompute_potential())
        self.initial_potential = self.state.potential

    @property
    def n(self) -> int:
        return self.weights.n

    def colouring(self) -> np.ndarray:
        return np.asarray(self.palette, dtype=np.int64)[self.f] if self.n else np.zeros(0, np.int64)

    def interaction(self, i: int, slots: np.ndarray) -> np.ndarray:
        """``sum_{j in class c, j != i} (b_ij + b_ji)`` for each slot ``c``."""
        beta_i = self.weights.beta[i]
        own = slots == self.f[i]
        return (
            self.Wsp[i, slots]
            + (self.size[slots] - own) * beta_i
            + self.bsum[slots]
            - own * beta_i
        )

    def deltas(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Potential change for recolouring ``i`` with each slot of its list."""
        slots = self.list_slots[i]
        r = self.f[i]
        w = self.interaction(i, slots) * self.class_weight[slots]
        here = w[slots == r][0]
        d = w - here
        d[slots == r] = 0.0
        return slots, d

    def move(self, i: int, new_slot: int, gain: float) -> None:
        r = self.f[i]
        if new_slot == r:
            return
        cols, vals = self._rows[i]
        self.Wsp[cols, r] -= vals
        self.Wsp[cols, new_slot] += vals
        beta_i = self.weights.beta[i]
        self.size[r] -= 1
        self.size[new_slot] += 1
        self.bsum[r] -= beta_i
        self.bsum[new_slot] += beta_i
        self.f[i] = new_slot
        self.state.potential += gain
        self.state.move_count += 1

    def best_move(self, i: int) -> tuple[int, float]:
        """Most negative move for ``i``; ties go to the smallest colour id."""
        slots, d = self.deltas(i)
        others = slots != self.f[i]
        if not others.any():
            return int(self.f[i]), 0.0
        cand = np.where(others, d, np.inf)
        k = int(np.argmin(cand))
        return int(slots[k]), float(cand[k])

    def step(self) -> int:
        """One cyclic pass over the vertices; returns the number of moves made."""
        moves = 0
        for i in range(self.n):
            s, gain = self.best_move(i)
            if gain < -self.delta:
                self.move(i, s, gain)
                moves += 1
        return moves

    def run(self, max_passes: int | None = None) -> SearchState:
        passes = 0
        while self.step():
            passes += 1
            if max_passes is not None and passes >= max_passes:
                break
        return self.state

    def is_fixed_point(self) -> bool:
        return all(self.best_move(i)[1] >= -self.delta for i in range(self.n))

    def recompute_potential(self) -> float:
        """Potential from scratch, without the incremental tables."""
        w = self.weights
        f = self.f
        base = w.base.tocoo()
        same = f[base.row] == f[base.col]
        cw = self.class_weight
        arc_part = float(np.sum(cw[f[base.row[same]]] * w.alpha[base.row[same]] * base.data[same]))
        size = np.bincount(f, minlength=len(self.palette))
        uniform_part = float(np.sum(cw[f] * w.beta * (size[f] - 1)))
        return arc_part + uniform_part


def local_search_step(search: PotentialSearch) -> SearchState | None:
    """One pass of :meth:`PotentialSearch.step`; ``None`` once no move improves."""
    return search.state if search.step() else None


def _search_and_repair(
    search: PotentialSearch, violations_of: Callable[[np.ndarray], list[Violation]]
) -> np.ndarray:
    search.run()
    budget = 10 * search.n
    while True:
        violations = violations_of(search.colouring())
        if not violations:
            break
        if search.state.forced_moves >= budget:
            raise RepairBudgetExceeded(violations)
        for v in violations:
            if search.state.forced_moves >= budget:
                break
            s, gain = search.best_move(v.vertex)
            search.move(v.vertex, s, gain)
            search.state.forced_moves += 1
        search.run()

    drift = abs(search.recompute_potential() - search.state.potential)
    assert drift <= 1e-9, f"tracked potential drifted by {drift}"
    moves = search.state.move_count - search.state.forced_moves
    assert moves <= math.ceil(search.initial_potential / search.delta) + 1
    return search.colouring()


def _initial(lists: ListAssignment, init: str, seed: int) -> list[int] | None:
    if init == "first":
        return None
    if init == "random":
        rng = np.random.Generator(np.random.PCG64(seed))
        return [lst[int(rng.integers(len(lst)))] for lst in lists.lists]
    raise ValueError(f"unknown initial assignment {init!r}")


def list_colouring(
    D: Digraph,
    L: ListAssignment,
    *,
    eps: float = 1e-9,
    tol: float = 1e-12,
    delta: float = DELTA,
    init: str = "first",
    seed: int = 0,
    weights: SearchWeights | None = None,
) -> Colouring:
    """Colour every vertex from its list so that no vertex shares its colour
    with more than ``2/m`` of its out-neighbours (``m`` = list size).

    Raises :class:`RepairBudgetExceeded` rather than return a colouring that
    fails the integer check.
    """
    if L.n != D.n:
        raise ValueError(f"lists cover {L.n} vertices, digraph has {D.n}")
    if D.n == 0:
        return Colouring(np.zeros(0, dtype=np.int64), 0)
    m = L.m
    if m < 1:
        raise ValueError("lists must be non-empty")
    weights = weights or search_weights(D, eps, tol)
    search = PotentialSearch(weights, L, initial=_initial(L, init, seed), delta=delta)

    def violations_of(col):
        return check_fraction(D, col, min(2, m), m) if m >= 2 else []

    col = _search_and_repair(search, violations_of)
    result = Colouring(col, max(search.palette) + 1)
    if not respects_lists(result, L) or violations_of(result.colour):
        raise SolverError("list colouring failed its final check")
    return result


def _capacities(t: int, capacities: Sequence | None) -> list[Fraction]:
    if t < 2:
        raise ValueError(f"need at least two classes, got t={t}")
    if capacities is None:
        return [Fraction(1, t)] * t
    caps = [Fraction(c) for c in capacities]
    if len(caps) != t:
        raise ValueError(f"expected {t} capacities, got {len(caps)}")
    if any(c <= 0 for c in caps) or sum(caps) != 1:
        raise ValueError("capacities must be positive and sum to 1")
    return caps


def _capacity_violations(D: Digraph, col: np.ndarray, caps: list[Fraction]) -> list[Violation]:
    counts = monochrome_out_counts(D, col)
    deg = D.out_deg.tolist()
    out = []
    for v, (b, d) in enumerate(zip(counts.tolist(), deg)):
        c = caps[col[v]]
        allowed = (2 * c.numerator * d) // c.denominator
        if b > allowed:
            out.append(Violation(v, b, d, allowed))
    return out


def partition_colouring(
    D: Digraph,
    t: int,
    capacities: Sequence | None = None,
    *,
    eps: float = 1e-9,
    tol: float = 1e-12,
    delta: float = DELTA,
    init: str = "first",
    seed: int = 0,
    weights: SearchWeights | None = None,
) -> Colouring:
    """Split the vertices into ``t`` classes so that a vertex in class ``r`` has
    out-neighbour weight at most ``2 c_r`` inside its class.

    With uniform capacities ``1/t`` this means at most ``floor(2 d+ / t)``
    same-coloured out-neighbours; ``t = 2k`` gives a ``1/k``-majority colouring.
    Capacities may be any positive rationals summing to 1.
    """
    caps = _capacities(t, capacities)
    if D.n == 0:
        return Colouring(np.zeros(0, dtype=np.int64), t)
    L = ListAssignment.uniform(D.n, range(t))
    uniform = all(c == caps[0] for c in caps)
    class_weight = None if uniform else {r: 1 / float(c) for r, c in enumerate(caps)}
    weights = weights or search_weights(D, eps, tol)
    search = PotentialSearch(
        weights, L, class_weight=class_weight, initial=_initial(L, init, seed), delta=delta
    )
    col = _search_and_repair(search, lambda col: _capacity_violations(D, col, caps))
    if _capacity_violations(D, col, caps):
        raise SolverError("partition colouring failed its final check")
    return Colouring(col, t)


@dataclass
class ExperimentReport:
    trials: int
    seed: int
    bad_counts: list[int]
    best_trial: int
    best_colouring: Colouring = field(repr=False)

    @property
    def best_count(self) -> int:
        return self.bad_counts[self.best_trial]

    @property
    def mean_bad(self) -> float:
        return sum(self.bad_counts) / self.trials

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "bad_counts": list(self.bad_counts),
            "best_trial": self.best_trial,
            "best_count": self.best_count,
            "mean_bad": self.mean_bad,
            "best_colouring": self.best_colouring.colour.tolist(),
        }


def trial_colours(n: int, seed: int, trial: int, colours: int = 3) -> np.ndarray:
    """Uniform colouring for one trial; depends only on ``(seed, trial)``."""
    ss = np.random.SeedSequence(seed, spawn_key=(trial,))
    return np.random.Generator(np.random.PCG64(ss)).integers(0, colours, size=n)


def random_three_colouring(
    T: Digraph, trials: int, seed: int = 0, batch: int = 32
) -> ExperimentReport:
    """Colour a tournament uniformly at random with 3 colours ``trials`` times and
    count bad vertices (more than half of the out-neighbours share the colour).
    """
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    if not T.is_tournament():
        raise NotATournament("random_three_colouring expects a tournament")
    n = T.n
    adj = T.adjacency_matrix(np.float32)
    deg = T.out_deg
    counts: list[int] = []
    best = (None, -1)
    rows = np.arange(n)
    for start in range(0, trials, batch):
        ids = range(start, min(start + batch, trials))
        cols = np.stack([trial_colours(n, seed, t) for t in ids], axis=1)
        onehot = np.zeros((n, 3 * len(ids)), dtype=np.float32)
        for k in range(len(ids)):
            onehot[rows, 3 * k + cols[:, k]] = 1.0
        same = adj @ onehot
        for k, t in enumerate(ids):
            B = same[rows, 3 * k + cols[:, k]].astype(np.int64)
            bad = int(np.count_nonzero(2 * B > deg))
            counts.append(bad)
            if best[0] is None or bad < best[0]:
                best = (bad, t)
    best_col = trial_colours(n, seed, best[1])
    assert len(bad_vertices(T, best_col)) == best[0]
    return ExperimentReport(trials, seed, counts, best[1], Colouring(best_col, 3))


def exact_min_colours(
    D: Digraph, k: int, m_max: int | None = None, budget: int = 2_000_000
) -> int | None:
    """Fewest colours admitting a ``1/k``-majority colouring, by exhaustive search.

    Colourings are enumerated in lexicographic order with colours introduced in
    order of first use (so vertex 0 always gets colour 0).  A vertex is checked
    as soon as it and all its out-neighbours are coloured, and the branch is cut
    if it violates.  ``budget`` caps the number of search nodes over all ``m``;
    exceeding it raises :class:`SearchBudgetExceeded`.  Returns ``None`` when no
    ``m <= m_max`` works (``m_max`` defaults to ``2k``).
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    n = D.n
    if n == 0:
        return 0
    m_max = 2 * k if m_max is None else m_max
    out = [D.out_adj(v).tolist() for v in range(n)]
    deg = D.out_deg.tolist()
    ready: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        ready[max([v, *out[v]])].append(v)
    nodes = 0
    colour = [-1] * n

    def ok(v: int) -> bool:
        cv = colour[v]
        return k * sum(1 for w in out[v] if colour[w] == cv) <= deg[v]

    def extend(p: int, used: int, m: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"exhaustive search exceeded {budget} nodes")
        if p == n:
            return True
        for c in range(min(used + 1, m)):
            colour[p] = c
            if all(ok(v) for v in ready[p]) and extend(p + 1, max(used, c + 1), m):
                return True
        colour[p] = -1
        return False

    for m in range(1, m_max + 1):
        if extend(0, 0, m):
            return m
    return None
