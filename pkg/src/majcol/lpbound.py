"""Exact-rational chain LP bounding the expected number of bad tournament vertices.

For out-degrees ``lo..hi`` maximise ``sum_i p_i v_i`` subject to
``sum_{j=lo}^{i} v_j <= 2i + 1`` for every ``i`` and ``v >= 0``, where ``p_i`` is
the probability that a vertex of out-degree ``i`` is bad under a uniform random
3-colouring.  A tournament has at most ``2i + 1`` vertices of out-degree at most
``i``, so the optimum bounds the expected number of bad vertices in the range.

Everything here is exact (``fractions.Fraction`` over Python integers).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

__all__ = [
    "LPInstance",
    "LPSolution",
    "BoundReport",
    "bad_probability",
    "build_lp",
    "solve_chain_lp",
    "solve_lp_reference",
    "bound_report",
    "parse_fraction",
]

REFERENCE_MAX_WIDTH = 13


@lru_cache(maxsize=None)
def bad_probability(i: int) -> Fraction:
    """P(Bin(i, 1/3) > i/2), exactly; the denominator divides ``3**i``."""
    if i <= 0:
        raise ValueError(f"out-degree must be positive, got {i}")
    # term_j = C(i, j) * 2**(i - j), walked down from term_i = 1
    numer = term = 1
    for j in range(i, i // 2 + 1, -1):
        term = term * j * 2 // (i - j + 1)
        numer += term
    return Fraction(numer, 3**i)


@dataclass(frozen=True)
class LPInstance:
    lo: int
    hi: int
    objective: tuple[Fraction, ...]
    capacity: tuple[Fraction, ...]

    def __post_init__(self):
        width = self.hi - self.lo + 1
        if len(self.objective) != width or len(self.capacity) != width:
            raise ValueError("objective and capacity must cover lo..hi")
        if any(not 0 <= p <= 1 for p in self.objective):
            raise ValueError("objective coefficients must lie in [0, 1]")
        if any(b <= a for a, b in zip(self.capacity, self.capacity[1:])):
            raise ValueError("prefix capacities must be strictly increasing")

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def is_feasible(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.width or any(x < 0 for x in v):
            return False
        return all(s <= g for s, g in zip(itertools.accumulate(v), self.capacity))

    def value(self, v: Sequence[Fraction]) -> Fraction:
        return sum((p * x for p, x in zip(self.objective, v)), Fraction(0))


@dataclass(frozen=True)
class LPSolution:
    lp: LPInstance
    v: tuple[Fraction, ...]
    optimum: Fraction


def build_lp(lo: int, hi: int) -> LPInstance:
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    return LPInstance(
        lo,
        hi,
        tuple(bad_probability(i) for i in range(lo, hi + 1)),
        tuple(Fraction(2 * i + 1) for i in range(lo, hi + 1)),
    )


def solve_chain_lp(lp: LPInstance) -> LPSolution:
    """Greedy optimum for nested prefix capacities.

    Indices are filled in order of decreasing objective (ties: lower index
    first), each taking the most the prefix constraints from its position
    onward still allow.  Prefix capacities on a chain form a polymatroid, for
    which this greedy is optimal with non-negative objective.
    """
    w = lp.width
    slack = list(lp.capacity)
    v = [Fraction(0)] * w
    for k in sorted(range(w), key=lambda k: (-lp.objective[k], k)):
        amount = min(slack[k:])
        if amount <= 0:
            continue
        v[k] = amount
        for t in range(k, w):
            slack[t] -= amount
    sol = tuple(v)
    assert lp.is_feasible(sol)
    return LPSolution(lp, sol, lp.value(sol))


def solve_lp_reference(lp: LPInstance) -> LPSolution:
    """Optimum by listing basic solutions; for checking the greedy on small widths.

    Every basic solution picks, for each index, either its prefix constraint
    tight or its variable zero.  That fixes the prefix sums one by one, so all
    ``2**width`` picks are solved and the feasible ones compared.
    """
    w = lp.width
    if w > REFERENCE_MAX_WIDTH:
        raise ValueError(f"reference solver handles widths up to {REFERENCE_MAX_WIDTH}, got {w}")
    best: tuple[Fraction, tuple[Fraction, ...]] | None = None
    for tight in itertools.product((False, True), repeat=w):
        prefix = Fraction(0)
        v = []
        for k in range(w):
            new = lp.capacity[k] if tight[k] else prefix
            v.append(new - prefix)
            prefix = new
        if not lp.is_feasible(v):
            continue
        val = lp.value(v)
        if best is None or val > best[0]:
            best = (val, tuple(v))
    assert best is not None  # v = 0 is always feasible
    return LPSolution(lp, best[1], best[0])


@dataclass(frozen=True)
class BoundReport:
    lo: int
    hi: int
    optimum: Fraction
    tail: Fraction

    @property
    def total(self) -> Fraction:
        return self.optimum + self.tail

    @property
    def guarantee(self) -> int:
        """Some 3-colouring has at most this many bad vertices."""
        return math.floor(self.total)

    def to_dict(self, digits: int = 12) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "optimum": _fraction_str(self.optimum),
            "optimum_decimal": _decimal(self.optimum, digits),
            "tail": _fraction_str(self.tail),
            "total": _fraction_str(self.total),
            "total_decimal": _decimal(self.total, digits),
            "guarantee": self.guarantee,
        }

    def to_text(self, digits: int = 12) -> str:
        d = self.to_dict(digits)
        # the exact fractions have hundreds of digits; show them last
        order = ["lo", "hi", "optimum_decimal", "tail", "total_decimal", "guarantee", "optimum", "total"]
        return "".join(f"{key}: {d[key]}\n" for key in order)


def bound_report(lo: int, hi: int, tail: Fraction | int | str = Fraction(1, 4)) -> BoundReport:
    """LP optimum over out-degrees ``lo..hi`` plus a bound for the degrees beyond."""
    tail = parse_fraction(tail) if isinstance(tail, str) else Fraction(tail)
    if tail < 0:
        raise ValueError(f"tail bound must be non-negative, got {tail}")
    return BoundReport(lo, hi, solve_chain_lp(build_lp(lo, hi)).optimum, tail)


def parse_fraction(text: str) -> Fraction:
    """Parse ``"a/b"`` or an integer; decimals are refused."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"expected a rational 'a/b', got {text!r}") from None


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _decimal(x: Fraction, digits: int) -> str:
    scaled = round(x * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
