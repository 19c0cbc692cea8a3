"""Finite digraphs on dense integer vertices, generators and edge-list I/O.

Arcs are stored once, in canonical sorted order, as a CSR pair
(``indptr``, ``indices``).  Every generator takes an explicit integer seed and
draws from numpy's PCG64 bit generator, so a given ``(n, seed)`` yields the same
digraph on every platform.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "Digraph",
    "EdgeListError",
    "new_digraph",
    "gen_regular_tournament",
    "gen_random_tournament",
    "gen_random_digraph",
    "gen_random_regular_tournament",
    "read_edge_list",
    "write_edge_list",
]


class EdgeListError(ValueError):
    """Malformed edge-list text; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


class Digraph:
    """Immutable simple digraph on vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    arcs : iterable of (int, int)
        Ordered pairs ``(u, v)`` meaning an arc ``u -> v``.  Duplicates are
        collapsed; self-loops and out-of-range endpoints raise ``ValueError``.
    """

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        n = int(n)
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        arr = np.asarray(list(arcs) if not isinstance(arcs, np.ndarray) else arcs, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        bad = (arr < 0) | (arr >= n)
        if bad.any():
            u, v = arr[np.flatnonzero(bad.any(axis=1))[0]]
            raise ValueError(f"arc ({u}, {v}) has an endpoint outside [0, {n})")
        loops = arr[:, 0] == arr[:, 1]
        if loops.any():
            u, v = arr[np.flatnonzero(loops)[0]]
            raise ValueError(f"arc ({u}, {v}) is a self-loop")
        self._init_keys(n, np.unique(arr[:, 0] * n + arr[:, 1]))

    @classmethod
    def _from_keys(cls, n: int, keys: np.ndarray) -> "Digraph":
        # keys = u * n + v, already validated; sorted and deduplicated here
        obj = cls.__new__(cls)
        obj._init_keys(n, np.unique(np.asarray(keys, dtype=np.int64)))
        return obj

    @classmethod
    def _from_mask(cls, mask: np.ndarray) -> "Digraph":
        # row-major nonzero order is already canonical
        obj = cls.__new__(cls)
        obj._init_keys(mask.shape[0], np.flatnonzero(mask).astype(np.int64))
        return obj

    def _init_keys(self, n: int, keys: np.ndarray) -> None:
        self.n = n
        if n == 0:
            src = dst = np.zeros(0, dtype=np.int64)
        else:
            src, dst = np.divmod(keys, n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        self.indptr = indptr
        self.indices = dst
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False

    @property
    def num_arcs(self) -> int:
        return int(self.indices.shape[0])

    @cached_property
    def out_deg(self) -> np.ndarray:
        deg = np.diff(self.indptr)
        deg.flags.writeable = False
        return deg

    @cached_property
    def sources(self) -> np.ndarray:
        """Tail of every arc, aligned with ``indices``."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_deg)
        src.flags.writeable = False
        return src

    def out_adj(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @property
    def arc_array(self) -> np.ndarray:
        """Arcs as an ``(m, 2)`` array in canonical (lexicographic) order."""
        return np.column_stack([self.sources, self.indices])

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in zip(self.sources, self.indices)]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        row = self.out_adj(u)
        pos = np.searchsorted(row, v)
        return bool(pos < row.shape[0] and row[pos] == v)

    def adjacency_matrix(self, dtype=np.int8) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=dtype)
        adj[self.sources, self.indices] = 1
        return adj

    def in_neighbour_lists(self) -> list[list[int]]:
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in zip(self.sources.tolist(), self.indices.tolist()):
            ins[v].append(u)
        return ins

    @cached_property
    def _is_tournament(self) -> bool:
        n = self.n
        if self.num_arcs != n * (n - 1) // 2:
            return False
        keys = self.sources * n + self.indices
        rev = np.sort(self.indices * n + self.sources)
        return np.intersect1d(keys, rev, assume_unique=True).shape[0] == 0

    def is_tournament(self) -> bool:
        """Exactly one of ``(u, v)``, ``(v, u)`` for every unordered pair."""
        return self._is_tournament

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.num_arcs})"


def new_digraph(n: int, arcs: Iterable[tuple[int, int]] = ()) -> Digraph:
    return Digraph(n, arcs)


def gen_regular_tournament(q: int) -> Digraph:
    """Rotational tournament: ``i -> (i + s) mod q`` for ``s = 1..(q-1)/2``.

    Every vertex has out-degree ``(q - 1) / 2``.
    """
    if q < 1 or q % 2 == 0:
        raise ValueError(f"regular tournament needs an odd order q >= 1, got {q}")
    half = (q - 1) // 2
    src = np.repeat(np.arange(q, dtype=np.int64), half)
    dst = (src + np.tile(np.arange(1, half + 1, dtype=np.int64), q)) % q
    return Digraph._from_keys(q, src * q + dst)


def gen_random_tournament(n: int, seed: int = 0) -> Digraph:
    """Orient each pair ``i < j`` as ``i -> j`` with probability 1/2."""
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    flip = _rng(seed).random(n * (n - 1) // 2) < 0.5
    # boolean-mask assignment walks the upper triangle row by row, i.e. pairs (i, j) in order
    forward = np.zeros((n, n), dtype=bool)
    forward[upper] = ~flip
    return Digraph._from_mask(forward | (upper & ~forward).T)


def gen_random_digraph(n: int, p: float, seed: int = 0) -> Digraph:
    """Include each ordered pair ``(u, v)``, ``u != v``, independently with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"arc probability must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    mask = _rng(seed).random((n, n)) < p
    np.fill_diagonal(mask, False)
    return Digraph._from_mask(mask)


def gen_random_regular_tournament(q: int, seed: int = 0, flips: int | None = None) -> Digraph:
    """Random regular tournament of odd order ``q``.

    Starts from the rotational tournament under a random relabelling and then
    reverses ``flips`` randomly chosen directed triangles.  Reversing a directed
    3-cycle keeps every out-degree, so the result stays regular with out-degree
    ``(q - 1) / 2``.  ``flips`` defaults to ``10 * q``.
    """
    base = gen_regular_tournament(q)
    rng = _rng(seed)
    perm = rng.permutation(q)
    adj = np.zeros((q, q), dtype=bool)
    adj[perm[base.sources], perm[base.indices]] = True
    if q >= 3:
        flips = 10 * q if flips is None else flips
        draws = rng.integers(0, q, size=(flips, 3))
        for a, b, c in draws.tolist():
            if a == b or b == c or a == c:
                continue
            if adj[a, b] and adj[b, c] and adj[c, a]:
                adj[a, b] = adj[b, c] = adj[c, a] = False
                adj[b, a] = adj[c, b] = adj[a, c] = True
            elif adj[b, a] and adj[c, b] and adj[a, c]:
                adj[b, a] = adj[c, b] = adj[a, c] = False
                adj[a, b] = adj[b, c] = adj[c, a] = True
    return Digraph._from_mask(adj)


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _parse_int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise EdgeListError(lineno, f"expected a non-negative integer, got {token!r}") from None
    if value < 0:
        raise EdgeListError(lineno, f"expected a non-negative integer, got {token!r}")
    return value


def read_edge_list(text: str) -> Digraph:
    """Parse ``n`` on the first content line, then one ``u v`` arc per line."""
    lines = _content_lines(text)
    try:
        lineno, fields = next(lines)
    except StopIteration:
        raise EdgeListError(1, "missing vertex count") from None
    if len(fields) != 1:
        raise EdgeListError(lineno, "first line must hold the vertex count only")
    n = _parse_int(fields[0], lineno)
    arcs = []
    for lineno, fields in lines:
        if len(fields) != 2:
            raise EdgeListError(lineno, f"expected 'u v', got {' '.join(fields)!r}")
        u, v = (_parse_int(f, lineno) for f in fields)
        if u >= n or v >= n:
            raise EdgeListError(lineno, f"arc ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise EdgeListError(lineno, f"self-loop at vertex {u}")
        arcs.append((u, v))
    return Digraph(n, arcs)


def write_edge_list(D: Digraph) -> str:
    body = "".join(f"{u} {v}\n" for u, v in zip(D.sources.tolist(), D.indices.tolist()))
    return f"{D.n}\n{body}"
