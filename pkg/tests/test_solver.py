import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from majcol.graph import (
    gen_random_digraph,
    gen_random_tournament,
    gen_regular_tournament,
    new_digraph,
)
from majcol.solver import (
    DELTA,
    NotATournament,
    PotentialSearch,
    RepairBudgetExceeded,
    SearchBudgetExceeded,
    exact_min_colours,
    list_colouring,
    local_search_step,
    partition_colouring,
    random_three_colouring,
    search_weights,
    trial_colours,
)
from majcol.verify import (
    ListAssignment,
    bad_vertices,
    check_fraction,
    check_majority,
    monochrome_out_counts,
    respects_lists,
)
from oracles import brute_force_min_colours

CYCLE = new_digraph(3, [(0, 1), (1, 2), (2, 0)])


def dense_potential(b, col, class_weight=None):
    total = 0.0
    for i, j in itertools.permutations(range(len(col)), 2):
        if col[i] == col[j]:
            total += b[i, j] * (1.0 if class_weight is None else class_weight[col[i]])
    return total


def random_lists(n, m, palette, rng):
    return ListAssignment(tuple(tuple(rng.choice(palette, m, replace=False).tolist()) for _ in range(n)))


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("p", [0.05, 0.3, 0.9])
def test_partition_gives_majority_colouring(k, p):
    for seed in range(4):
        D = gen_random_digraph(60, p, seed)
        c = partition_colouring(D, 2 * k)
        assert c.palette_size == 2 * k
        assert check_majority(D, c, k) == []


def test_partition_on_arcless_digraph():
    D = new_digraph(7)
    c = partition_colouring(D, 3)
    assert c.n == 7 and monochrome_out_counts(D, c).sum() == 0


def test_partition_three_cycle():
    c = partition_colouring(CYCLE, 4)
    assert check_majority(CYCLE, c, 2) == []


def test_partition_uniform_bound_for_odd_t():
    for seed in range(5):
        D = gen_random_digraph(50, 0.4, seed)
        c = partition_colouring(D, 5)
        counts = monochrome_out_counts(D, c)
        assert np.all(counts <= (2 * D.out_deg) // 5)


def test_partition_with_unequal_capacities():
    caps = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]
    for seed in range(6):
        D = gen_random_digraph(40, 0.5, seed)
        c = partition_colouring(D, 3, caps)
        counts = monochrome_out_counts(D, c)
        for v in range(D.n):
            cap = caps[c[v]]
            assert counts[v] * cap.denominator <= 2 * cap.numerator * D.out_deg[v]


@pytest.mark.parametrize("caps", [[Fraction(1, 2), Fraction(1, 3)], [1, 0], [Fraction(1, 2)] * 3])
def test_partition_rejects_bad_capacities(caps):
    with pytest.raises(ValueError):
        partition_colouring(CYCLE, len(caps), caps)


def test_list_colouring_full_palette_matches_partition_bound():
    for seed in range(5):
        D = gen_random_digraph(50, 0.3, seed)
        L = ListAssignment.uniform(D.n, range(6))
        by_lists = list_colouring(D, L)
        by_parts = partition_colouring(D, 6)
        for c in (by_lists, by_parts):
            assert np.all(monochrome_out_counts(D, c) <= (2 * D.out_deg) // 6)
            assert check_majority(D, c, 3) == []


def test_list_colouring_size_three_lists():
    rng = np.random.default_rng(5)
    for seed in range(8):
        D = gen_random_digraph(40, 0.4, seed)
        L = random_lists(D.n, 3, 9, rng)
        c = list_colouring(D, L)
        assert respects_lists(c, L)
        assert check_fraction(D, c, 2, 3) == []


def test_list_colouring_single_vertex():
    c = list_colouring(new_digraph(1), ListAssignment(((7,),)))
    assert c.colour.tolist() == [7]


def test_list_colouring_random_start_also_valid():
    rng = np.random.default_rng(1)
    D = gen_random_digraph(50, 0.3, 1)
    L = random_lists(D.n, 4, 12, rng)
    c = list_colouring(D, L, init="random", seed=3)
    assert respects_lists(c, L) and check_fraction(D, c, 2, 4) == []
    assert c == list_colouring(D, L, init="random", seed=3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.floats(0, 1), st.integers(0, 2**31), st.integers(2, 6), st.integers(0, 2**31))
def test_list_colouring_property(n, p, seed, m, lseed):
    D = gen_random_digraph(n, p, seed)
    L = random_lists(n, m, 3 * m, np.random.default_rng(lseed))
    c = list_colouring(D, L)
    assert respects_lists(c, L)
    assert check_fraction(D, c, 2, m) == []


def test_fixed_point_condition():
    D = gen_random_digraph(40, 0.3, 2)
    w = search_weights(D)
    S = PotentialSearch(w, ListAssignment.uniform(D.n, range(4)))
    S.run()
    assert local_search_step(S) is None
    b = w.dense_b()
    s = b + b.T
    f = S.colouring()
    for i in range(D.n):
        here = s[i, f == f[i]].sum()
        for l in range(4):
            assert here <= s[i, f == l].sum() - (s[i, i] if l == f[i] else 0) + DELTA + 1e-15


def test_moves_strictly_decrease_potential():
    D = gen_random_digraph(30, 0.4, 9)
    S = PotentialSearch(search_weights(D), ListAssignment.uniform(D.n, range(3)))
    history = [S.state.potential]
    while True:
        before = S.state.move_count
        state = local_search_step(S)
        if state is None:
            break
        moves = S.state.move_count - before
        assert S.state.potential < history[-1] - moves * DELTA
        history.append(S.state.potential)
    assert len(history) > 1
    assert S.state.move_count <= int(np.ceil(1 / DELTA))


def test_three_cycle_two_colours():
    w = search_weights(CYCLE)
    S = PotentialSearch(w, ListAssignment.uniform(3, [0, 1]), initial=[0, 0, 0])
    S.run()
    f = S.colouring()
    mono = sum(f[u] == f[v] for u, v in CYCLE.arcs)
    assert mono <= 1 and S.state.move_count <= 3
    b = w.dense_b()
    best = min(dense_potential(b, col) for col in itertools.product([0, 1], repeat=3))
    assert S.state.potential == pytest.approx(best, abs=1e-15)


@pytest.mark.parametrize("weighted", [False, True])
def test_tracked_potential_matches_double_sum(weighted):
    rng = np.random.default_rng(4)
    D = gen_random_digraph(35, 0.2, 4)
    w = search_weights(D, eps=1e-3)
    cw = {0: 2.0, 1: 3.0, 2: 6.0} if weighted else None
    S = PotentialSearch(w, ListAssignment.uniform(D.n, range(3)), class_weight=cw,
                        initial=rng.integers(0, 3, D.n))
    S.run()
    b = w.dense_b()
    assert S.state.potential == pytest.approx(dense_potential(b, S.colouring(), cw), abs=1e-9)
    assert S.recompute_potential() == pytest.approx(S.state.potential, abs=1e-9)
    assert 0 <= S.state.potential <= (6.0 if weighted else 1.0) + 1e-12


def test_repair_budget_error(monkeypatch):
    monkeypatch.setattr(PotentialSearch, "best_move", lambda self, i: (int(self.f[i]), 0.0))
    with pytest.raises(RepairBudgetExceeded) as info:
        list_colouring(CYCLE, ListAssignment.uniform(3, [0, 1, 2]))
    assert info.value.violations


def test_repair_fixes_a_lazy_search():
    # with a huge margin the search never moves, so the repair loop does all the work
    for seed in range(5):
        D = gen_random_digraph(30, 0.3, seed)
        try:
            c = partition_colouring(D, 4, delta=10.0)
        except RepairBudgetExceeded:
            continue
        assert check_majority(D, c, 2) == []


def test_random_three_colouring_counts():
    T = gen_random_tournament(60, 3)
    rep = random_three_colouring(T, 12, seed=5)
    assert len(rep.bad_counts) == 12
    for t, count in enumerate(rep.bad_counts):
        assert count == len(bad_vertices(T, trial_colours(T.n, 5, t)))
    assert rep.best_count == min(rep.bad_counts)
    assert rep.mean_bad == pytest.approx(sum(rep.bad_counts) / 12)
    assert len(bad_vertices(T, rep.best_colouring)) == rep.best_count


def test_random_three_colouring_is_deterministic_per_trial():
    T = gen_random_tournament(40, 8)
    short = random_three_colouring(T, 5, seed=2)
    long = random_three_colouring(T, 40, seed=2, batch=7)
    assert long.bad_counts[:5] == short.bad_counts
    assert random_three_colouring(T, 5, seed=2).to_dict() == short.to_dict()


def test_random_three_colouring_edge_cases():
    assert random_three_colouring(new_digraph(1), 3).bad_counts == [0, 0, 0]
    with pytest.raises(NotATournament):
        random_three_colouring(new_digraph(3, [(0, 1)]), 3)
    with pytest.raises(ValueError):
        random_three_colouring(CYCLE, 0)


def test_exact_examples():
    assert exact_min_colours(CYCLE, 2) == 3
    assert exact_min_colours(gen_regular_tournament(5), 3) == 5
    assert exact_min_colours(new_digraph(6), 4) == 1
    assert exact_min_colours(new_digraph(0), 2) == 0


def test_exact_matches_brute_force_examples():
    assert brute_force_min_colours(3, [[1], [2], [0]], 2, 4) == 3
    T = gen_regular_tournament(5)
    assert brute_force_min_colours(5, [T.out_adj(v).tolist() for v in range(5)], 3, 6) == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.floats(0, 1), st.integers(0, 2**31), st.integers(2, 3))
def test_exact_matches_brute_force(n, p, seed, k):
    D = gen_random_digraph(n, p, seed)
    out = [D.out_adj(v).tolist() for v in range(n)]
    got = exact_min_colours(D, k)
    assert got == brute_force_min_colours(n, out, k, 2 * k)
    assert got is not None and got <= 2 * k


def test_exact_none_when_m_max_too_small():
    assert exact_min_colours(gen_regular_tournament(5), 3, m_max=4) is None


def test_exact_budget():
    with pytest.raises(SearchBudgetExceeded):
        exact_min_colours(gen_random_tournament(14, 1), 2, budget=50)
