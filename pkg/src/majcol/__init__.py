"""Majority colourings of digraphs.

Constructive ``1/k``-majority colourings with ``2k`` colours and
``2/m``-majority list colourings from lists of size ``m``, random 3-colourings
of tournaments, and the exact chain LP bounding their bad vertices.
"""

from .graph import (
    Digraph,
    EdgeListError,
    gen_random_digraph,
    gen_random_regular_tournament,
    gen_random_tournament,
    gen_regular_tournament,
    new_digraph,
    read_edge_list,
    write_edge_list,
)
from .lpbound import (
    BoundReport,
    LPInstance,
    LPSolution,
    bad_probability,
    bound_report,
    build_lp,
    solve_chain_lp,
    solve_lp_reference,
)
from .solver import (
    ExperimentReport,
    PotentialSearch,
    RepairBudgetExceeded,
    SearchBudgetExceeded,
    SearchState,
    SolverError,
    exact_min_colours,
    list_colouring,
    local_search_step,
    partition_colouring,
    random_three_colouring,
    search_weights,
)
from .spectral import (
    PerronConvergenceError,
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
    check_majority,
    chernoff_bad_bound,
    dyadic_classes,
    expected_bad_upper_bound,
    monochrome_out_count,
    respects_lists,
)

__version__ = "0.1.0"
