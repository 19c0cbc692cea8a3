"""
Sharper bounds from a linear program
====================================

Replacing the per-class Chernoff estimate with the exact probability ``p_i``
that a vertex of out-degree ``i`` is bad, and letting an LP choose the worst
degree profile a tournament allows, gives much smaller bounds.  All arithmetic
is exact.
"""

from fractions import Fraction

from majcol import bad_probability, bound_report, build_lp, solve_chain_lp

print([str(bad_probability(i)) for i in range(1, 6)])

# %%
# Out-degrees 1..1023, plus 1/4 for everything larger: fewer than 8 expected
# bad vertices, so some colouring has at most 7.
rep = bound_report(1, 1023, Fraction(1, 4))
print(rep.to_text(digits=9).split("optimum:")[0])

# %%
# Tournaments with minimum out-degree 55: the expectation drops below 1, so a
# colouring with no bad vertex exists.
rep = bound_report(55, 1023, Fraction(1, 4))
print(rep.to_text(digits=9).split("optimum:")[0])

# %%
# Where the optimum puts its mass: the greedy fills the likeliest-bad degrees
# up to the prefix caps 2i + 1.
sol = solve_chain_lp(build_lp(1, 40))
print({i: int(v) for i, v in zip(range(1, 41), sol.v) if v})
