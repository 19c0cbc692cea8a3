"""
Colouring from lists
====================

Give every vertex its own list of ``m`` colours.  The list solver picks one
colour per vertex so that at most a ``2/m`` share of the out-neighbours agree
with it.  With ``m = 3`` that is "at most two thirds".
"""

import numpy as np

from majcol import ListAssignment, check_fraction, gen_random_digraph, list_colouring, respects_lists

rng = np.random.default_rng(0)
D = gen_random_digraph(150, 0.2, seed=4)

for m in (3, 4, 6):
    # lists drawn from a palette three times their size
    L = ListAssignment(tuple(tuple(rng.choice(3 * m, m, replace=False).tolist()) for _ in range(D.n)))
    c = list_colouring(D, L)
    print(f"m={m}: respects lists {respects_lists(c, L)}, "
          f"violations of 2/{m}: {len(check_fraction(D, c, 2, m))}, "
          f"distinct colours used {c.num_colours_used}")

# %%
# The weights steering the search are the left Perron vector of the
# out-neighbour matrix.  Vertices nobody points at get almost no weight.
from majcol import search_weights

w = search_weights(D)
order = np.argsort(w.u)
print("lightest vertices:", order[:5], w.u[order[:5]])
print("heaviest vertices:", order[-5:], w.u[order[-5:]])
