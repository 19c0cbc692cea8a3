"""
Exact minimum colour counts on small digraphs
=============================================

The regular tournament on ``2k - 1`` vertices needs ``2k - 1`` colours for a
``1/k``-majority colouring: every out-degree is ``k - 1``, so no out-neighbour
may share a colour.  Exhaustive search confirms this, and a sweep over small
random digraphs shows how far typical instances sit below ``2k``.
"""

from collections import Counter

from majcol import exact_min_colours, gen_random_digraph, gen_regular_tournament

for k in (2, 3, 4):
    T = gen_regular_tournament(2 * k - 1)
    print(f"k={k}: regular tournament on {2 * k - 1} vertices needs {exact_min_colours(T, k)} colours")

# %%
for k in (2, 3):
    seen = Counter(exact_min_colours(gen_random_digraph(8, p, seed), k)
                   for seed in range(40) for p in (0.3, 0.6, 0.9))
    print(f"k={k}: minimum colour counts over 120 random 8-vertex digraphs {dict(sorted(seen.items()))}")
