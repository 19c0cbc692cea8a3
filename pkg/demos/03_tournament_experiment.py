"""
Random 3-colourings of tournaments
==================================

Colour a tournament uniformly at random with three colours and call a vertex
bad when more than half of its out-neighbours share its colour.  The expected
number of bad vertices is bounded by a constant, whatever the tournament.  In
practice random tournaments of moderate size have almost no bad vertices;
the low out-degree vertices are the only ones at risk.
"""

from collections import Counter

from majcol import dyadic_classes, gen_random_tournament, random_three_colouring
from majcol.verify import chernoff_bad_bound, expected_bad_upper_bound

for n in (20, 100, 500, 2000):
    T = gen_random_tournament(n, seed=n)
    rep = random_three_colouring(T, trials=200, seed=0)
    print(f"n={n:5d}: min out-degree {int(T.out_deg.min()):4d}, "
          f"mean bad {rep.mean_bad:.3f}, best {rep.best_count}, "
          f"spread {dict(sorted(Counter(rep.bad_counts).items()))}")

# %%
# Out-degree classes [2^(i-1), 2^i) hold at most 2^(i+1) - 1 vertices.
T = gen_random_tournament(2000, seed=1)
for i, members in dyadic_classes(T).items():
    print(f"class {i:2d}: {len(members):4d} vertices (limit {2 ** (i + 1) - 1})")

# %%
# The Chernoff estimate per vertex and the resulting bound on the expectation.
for d in (10, 100, 1024):
    print(f"P(bad | out-degree {d}) <= {chernoff_bad_bound(d):.3e}")
print(f"expected bad vertices <= {expected_bad_upper_bound():.4f}")
