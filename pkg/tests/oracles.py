"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def gth_stationary(P):
    """Left stationary vector of a row-stochastic matrix by GTH elimination.

    Gaussian elimination without subtractions; accurate for nearly
    decomposable chains.
    """
    P = np.array(P, dtype=float)
    n = P.shape[0]
    for k in range(n - 1, 0, -1):
        s = P[k, :k].sum()
        P[:k, k] /= s
        P[:k, :k] += np.outer(P[:k, k], P[k, :k])
    pi = np.zeros(n)
    pi[0] = 1.0
    for k in range(1, n):
        pi[k] = pi[:k] @ P[:k, k]
    return pi / pi.sum()


def brute_force_min_colours(n, out_adj, k, m_max):
    """Smallest m <= m_max admitting a 1/k-majority colouring, over all m**n maps."""
    for m in range(1, m_max + 1):
        for col in itertools.product(range(m), repeat=n):
            if all(
                k * sum(col[w] == col[v] for w in out_adj[v]) <= len(out_adj[v])
                for v in range(n)
            ):
                return m
    return None


def polytope_vertices_2d(p1, p2, g1, g2):
    """Optimum of max p1 v1 + p2 v2 s.t. v1 <= g1, v1 + v2 <= g2, v >= 0 by listing
    the four corners of the polygon."""
    corners = [(0, 0), (g1, 0), (g1, g2 - g1), (0, g2)]
    return max(Fraction(p1) * a + Fraction(p2) * b for a, b in corners)
