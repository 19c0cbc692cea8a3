"""
Majority colouring with 2k colours
==================================

Every digraph has a colouring with ``2k`` colours in which each vertex shares
its colour with at most a ``1/k`` share of its out-neighbours.  Here we build
one for a few random digraphs and look at how close the worst vertex gets to
the threshold.
"""

from fractions import Fraction

import numpy as np

from majcol import check_majority, gen_random_digraph, partition_colouring
from majcol.verify import monochrome_out_counts

# %%
# A sparse and a dense random digraph, and k = 2, 3.
for p in (0.05, 0.5):
    D = gen_random_digraph(200, p, seed=1)
    for k in (2, 3):
        c = partition_colouring(D, 2 * k)
        counts = monochrome_out_counts(D, c)
        active = D.out_deg > 0
        worst = max(Fraction(int(b), int(d)) for b, d in zip(counts[active], D.out_deg[active]))
        print(f"p={p:<4} k={k}: {c.num_colours_used} colours used, "
              f"worst share {worst} = {float(worst):.3f} (allowed {1 / k:.3f}), "
              f"violations: {len(check_majority(D, c, k))}")

# %%
# The colour classes are roughly balanced; nothing forces that, it falls out
# of the potential the search minimises.
D = gen_random_digraph(200, 0.5, seed=1)
print(np.bincount(partition_colouring(D, 4).colour))
