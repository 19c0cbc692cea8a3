"""Majority-colouring checks and the tournament bad-vertex analysis.

All threshold tests are integer comparisons.  "At most a ``num/den`` share of
the out-neighbours" is ``den * B <= num * d`` where ``B`` counts out-neighbours
sharing the vertex's colour and ``d`` is its out-degree, i.e.
``B <= floor(num * d / den)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .graph import Digraph, EdgeListError, _content_lines, _parse_int

__all__ = [
    "Colouring",
    "ListAssignment",
    "Violation",
    "monochrome_out_count",
    "monochrome_out_counts",
    "check_majority",
    "check_fraction",
    "bad_vertices",
    "dyadic_classes",
    "dyadic_bound_violations",
    "chernoff_bad_bound",
    "expected_bad_upper_bound",
    "dyadic_head_sum",
    "dyadic_tail_sum",
    "respects_lists",
    "read_colouring",
    "write_colouring",
    "read_lists",
    "write_lists",
]


@dataclass(frozen=True)
class Colouring:
    """Total map vertex -> colour id, with ``colour[v] < palette_size``."""

    colour: np.ndarray
    palette_size: int

    def __post_init__(self):
        colour = np.array(self.colour, dtype=np.int64).reshape(-1)
        if colour.size and (colour.min() < 0 or colour.max() >= self.palette_size):
            raise ValueError(f"colour ids must lie in [0, {self.palette_size})")
        colour.flags.writeable = False
        object.__setattr__(self, "colour", colour)

    @classmethod
    def from_sequence(cls, colours: Sequence[int]) -> "Colouring":
        colours = np.asarray(colours, dtype=np.int64)
        return cls(colours, int(colours.max()) + 1 if colours.size else 0)

    @property
    def n(self) -> int:
        return int(self.colour.shape[0])

    @property
    def num_colours_used(self) -> int:
        return int(np.unique(self.colour).shape[0])

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, v: int) -> int:
        return int(self.colour[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Colouring):
            return NotImplemented
        return self.palette_size == other.palette_size and np.array_equal(self.colour, other.colour)

    def __hash__(self) -> int:
        return hash((self.palette_size, self.colour.tobytes()))


@dataclass(frozen=True)
class ListAssignment:
    """A list of ``m`` distinct admissible colours per vertex."""

    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        lists = tuple(tuple(sorted(int(c) for c in lst)) for lst in self.lists)
        sizes = {len(lst) for lst in lists}
        if len(sizes) > 1:
            raise ValueError(f"lists must all have the same size, got sizes {sorted(sizes)}")
        for v, lst in enumerate(lists):
            if len(set(lst)) != len(lst):
                raise ValueError(f"list of vertex {v} repeats a colour: {lst}")
            if lst and lst[0] < 0:
                raise ValueError(f"list of vertex {v} has a negative colour id")
        object.__setattr__(self, "lists", lists)

    @classmethod
    def uniform(cls, n: int, colours: Sequence[int]) -> "ListAssignment":
        return cls(tuple(tuple(colours) for _ in range(n)))

    @property
    def m(self) -> int:
        return len(self.lists[0]) if self.lists else 0

    @property
    def n(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.lists[v]


@dataclass(frozen=True)
class Violation:
    vertex: int
    same_colour_out: int
    out_degree: int
    allowed: int


ColoursLike = Union[Colouring, Sequence[int], np.ndarray]


def _colours(c: ColoursLike) -> np.ndarray:
    if isinstance(c, Colouring):
        return c.colour
    return np.asarray(c, dtype=np.int64)


def _checked_colours(D: Digraph, c: ColoursLike) -> np.ndarray:
    col = _colours(c)
    if col.shape != (D.n,):
        raise ValueError(f"colouring covers {col.shape[0]} vertices, digraph has {D.n}")
    return col


def monochrome_out_counts(D: Digraph, c: ColoursLike) -> np.ndarray:
    """``B[v]`` = number of out-neighbours of ``v`` with the colour of ``v``, for all ``v``."""
    col = _checked_colours(D, c)
    same = col[D.sources] == col[D.indices]
    return np.bincount(D.sources[same], minlength=D.n).astype(np.int64)


def monochrome_out_count(D: Digraph, c: ColoursLike, v: int) -> int:
    col = _checked_colours(D, c)
    return int(np.count_nonzero(col[D.out_adj(v)] == col[v]))


def _violations(mask, counts, deg, allowed) -> list[Violation]:
    return [
        Violation(int(v), int(counts[v]), int(deg[v]), int(allowed[v]))
        for v in np.flatnonzero(mask)
    ]


def check_majority(D: Digraph, c: ColoursLike, k: int) -> list[Violation]:
    """Vertices sharing their colour with more than ``d+/k`` of their out-neighbours."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    counts = monochrome_out_counts(D, c)
    deg = D.out_deg
    return _violations(k * counts > deg, counts, deg, deg // k)


def check_fraction(D: Digraph, c: ColoursLike, num: int, den: int) -> list[Violation]:
    """Like :func:`check_majority` with threshold ``num/den`` instead of ``1/k``."""
    if not 0 < num <= den:
        raise ValueError(f"need 0 < num <= den, got {num}/{den}")
    counts = monochrome_out_counts(D, c)
    deg = D.out_deg
    allowed = (num * deg) // den
    return _violations(counts > allowed, counts, deg, allowed)


def bad_vertices(T: Digraph, c: ColoursLike) -> set[int]:
    """Vertices whose colour is shared by more than half of their out-neighbours."""
    counts = monochrome_out_counts(T, c)
    return {int(v) for v in np.flatnonzero(2 * counts > T.out_deg)}


def dyadic_classes(D: Digraph) -> dict[int, set[int]]:
    """Group vertices with ``2**(i-1) <= d+(v) < 2**i`` under key ``i``; sinks are left out."""
    classes: dict[int, set[int]] = {}
    for v, d in enumerate(D.out_deg.tolist()):
        if d >= 1:
            classes.setdefault(d.bit_length(), set()).add(v)
    return dict(sorted(classes.items()))


def dyadic_bound_violations(D: Digraph) -> list[tuple[int, int]]:
    """Classes with ``|S_i| > 2**(i+1) - 1`` as ``(i, |S_i|)``; always empty for tournaments."""
    return [(i, len(s)) for i, s in dyadic_classes(D).items() if len(s) > 2 ** (i + 1) - 1]


def chernoff_bad_bound(d: int) -> float:
    """Upper bound ``exp(-d/36)`` on the chance that a vertex of out-degree ``d`` is bad
    under a uniform random 3-colouring."""
    if d <= 0:
        raise ValueError(f"out-degree must be positive, got {d}")
    return math.exp(-d / 36)


def dyadic_head_sum(last: int = 10) -> float:
    """``sum_{i=1}^{last} 2**(i+1) * exp(-2**(i-1) / 36)``."""
    return math.fsum(2 ** (i + 1) * math.exp(-(2 ** (i - 1)) / 36) for i in range(1, last + 1))


def dyadic_tail_sum(first: int = 11) -> Fraction:
    """``sum_{i>=first} 2**(8-i)`` in closed form (geometric series, ratio 1/2)."""
    return Fraction(2) ** (8 - first) / (1 - Fraction(1, 2))


def expected_bad_upper_bound() -> float:
    """Bound on the expected number of bad vertices of a random 3-coloured tournament."""
    return dyadic_head_sum(10) + float(dyadic_tail_sum(11))


def respects_lists(c: ColoursLike, L: ListAssignment) -> bool:
    col = _colours(c)
    if col.shape[0] != L.n:
        raise ValueError(f"colouring covers {col.shape[0]} vertices, lists cover {L.n}")
    return all(int(col[v]) in L.lists[v] for v in range(L.n))


def read_colouring(text: str, palette_size: int | None = None) -> Colouring:
    """Parse ``v c`` lines; every vertex ``0..n-1`` must appear exactly once."""
    seen: dict[int, int] = {}
    for lineno, fields in _content_lines(text):
        if len(fields) != 2:
            raise EdgeListError(lineno, f"expected 'v c', got {' '.join(fields)!r}")
        v, col = (_parse_int(f, lineno) for f in fields)
        if v in seen:
            raise EdgeListError(lineno, f"vertex {v} coloured twice")
        seen[v] = col
    n = len(seen)
    if sorted(seen) != list(range(n)):
        missing = sorted(set(range(max(seen, default=-1) + 1)) - set(seen))
        raise ValueError(f"colouring does not cover vertices {missing[:10]}")
    colours = [seen[v] for v in range(n)]
    if palette_size is None:
        return Colouring.from_sequence(colours)
    return Colouring(np.asarray(colours, dtype=np.int64), palette_size)


def write_colouring(c: ColoursLike) -> str:
    return "".join(f"{v} {col}\n" for v, col in enumerate(_colours(c).tolist()))


def read_lists(text: str) -> ListAssignment:
    """Parse ``v c1 c2 ... cm`` lines, one per vertex."""
    seen: dict[int, tuple[int, ...]] = {}
    for lineno, fields in _content_lines(text):
        if len(fields) < 2:
            raise EdgeListError(lineno, "expected 'v c1 ... cm'")
        v, *cols = (_parse_int(f, lineno) for f in fields)
        if v in seen:
            raise EdgeListError(lineno, f"vertex {v} listed twice")
        seen[v] = tuple(cols)
    n = len(seen)
    if sorted(seen) != list(range(n)):
        raise ValueError("list file must cover vertices 0..n-1 exactly once")
    return ListAssignment(tuple(seen[v] for v in range(n)))


def write_lists(L: ListAssignment) -> str:
    return "".join(f"{v} {' '.join(map(str, lst))}\n" for v, lst in enumerate(L.lists))
