import math
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
from majcol.verify import (
    Colouring,
    ListAssignment,
    Violation,
    bad_vertices,
    check_fraction,
    check_majority,
    chernoff_bad_bound,
    dyadic_bound_violations,
    dyadic_classes,
    dyadic_head_sum,
    dyadic_tail_sum,
    expected_bad_upper_bound,
    monochrome_out_count,
    monochrome_out_counts,
    read_colouring,
    read_lists,
    respects_lists,
    write_colouring,
    write_lists,
)

CYCLE = new_digraph(3, [(0, 1), (1, 2), (2, 0)])


def complete(n):
    return gen_random_digraph(n, 1.0, 0)


def star(leaves=5):
    return new_digraph(leaves + 1, [(0, j) for j in range(1, leaves + 1)])


def test_monochrome_out_count():
    assert monochrome_out_count(CYCLE, [0, 0, 1], 0) == 1
    assert monochrome_out_count(star(), [0] * 6, 3) == 0
    K4 = complete(4)
    assert [monochrome_out_count(K4, [2] * 4, v) for v in range(4)] == [3] * 4
    assert monochrome_out_counts(K4, [2] * 4).tolist() == [3] * 4


def test_check_majority_examples():
    assert check_majority(CYCLE, [0, 1, 2], 2) == []
    assert check_majority(CYCLE, [0, 0, 1], 2) == [Violation(0, 1, 1, 0)]
    with pytest.raises(ValueError):
        check_majority(CYCLE, [0, 1, 2], 1)


def test_regular_tournament_forces_proper_colouring():
    T = gen_regular_tournament(5)
    # 0 -> 1 is an arc; sharing a colour along it already breaks 1/3-majority
    col = [0, 0, 1, 2, 3]
    violations = check_majority(T, col, 3)
    assert [v.vertex for v in violations] == [0]
    assert violations[0].allowed == 0
    assert check_majority(T, [0, 1, 2, 3, 4], 3) == []


def test_check_fraction_examples():
    assert check_fraction(CYCLE, [0, 0, 1], 2, 3) == [Violation(0, 1, 1, 0)]
    # centre -> 5 leaves, 3 of them share its colour: 3 <= floor(2 * 5 / 3) = 3
    assert check_fraction(star(), [0, 0, 0, 0, 1, 1], 2, 3) == []
    assert check_fraction(star(), [0, 0, 0, 0, 0, 1], 2, 3) == [Violation(0, 4, 5, 3)]
    with pytest.raises(ValueError):
        check_fraction(CYCLE, [0, 1, 2], 3, 2)


def test_check_fraction_matches_check_majority_on_random_digraphs():
    rng = np.random.default_rng(0)
    for s in range(100):
        n = int(rng.integers(1, 40))
        D = gen_random_digraph(n, float(rng.random()), s)
        col = rng.integers(0, int(rng.integers(1, 5)), n)
        k = int(rng.integers(2, 6))
        assert check_majority(D, col, k) == check_fraction(D, col, 1, k)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30), st.floats(0, 1), st.integers(0, 2**31), st.integers(2, 7), st.data())
def test_threshold_is_integer_exact(n, p, seed, k, data):
    D = gen_random_digraph(n, p, seed)
    col = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    flagged = {v.vertex for v in check_majority(D, col, k)}
    for v in range(n):
        share = Fraction(monochrome_out_count(D, col, v), max(int(D.out_deg[v]), 1))
        assert (v in flagged) == (D.out_deg[v] > 0 and share > Fraction(1, k))


def test_bad_vertices():
    assert bad_vertices(CYCLE, [0, 1, 2]) == set()
    assert bad_vertices(CYCLE, [0, 0, 0]) == {0, 1, 2}
    # out-degree 2 with one same-coloured out-neighbour is not bad
    D = new_digraph(3, [(0, 1), (0, 2)])
    assert bad_vertices(D, [0, 0, 1]) == set()
    assert bad_vertices(D, [0, 0, 0]) == {0}


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 60), st.integers(0, 2**31), st.data())
def test_bad_vertices_is_half_threshold(n, seed, data):
    T = gen_random_tournament(n, seed)
    col = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    assert bad_vertices(T, col) == {v.vertex for v in check_fraction(T, col, 1, 2)}


def test_dyadic_classes():
    assert dyadic_classes(gen_regular_tournament(5)) == {2: {0, 1, 2, 3, 4}}
    assert dyadic_classes(new_digraph(4)) == {}
    D = new_digraph(5, [(0, 1), (1, 0), (1, 2), (2, 0), (2, 1), (2, 3), (3, 4)])
    assert dyadic_classes(D) == {1: {0, 3}, 2: {1, 2}}


def test_dyadic_bound_on_random_tournaments():
    rng = np.random.default_rng(2024)
    for s in range(1000):
        T = gen_random_tournament(int(rng.integers(1, 2001)), s)
        assert dyadic_bound_violations(T) == []


def test_dyadic_bound_can_fail_outside_tournaments():
    # 8 vertices of out-degree 1 exceed 2**2 - 1 = 3
    D = new_digraph(9, [(v, 8) for v in range(8)])
    assert dyadic_bound_violations(D) == [(1, 8)]


def test_chernoff_bound():
    assert chernoff_bad_bound(36) == pytest.approx(math.exp(-1), abs=1e-12)
    # out-degree 1024 lies in class i = 11, where the bound is at most 2**-(2i - 7)
    assert chernoff_bad_bound(1024) <= 2.0**-15
    values = [chernoff_bad_bound(d) for d in range(1, 10001)]
    assert all(a > b for a, b in zip(values, values[1:]))
    with pytest.raises(ValueError):
        chernoff_bad_bound(0)


@pytest.mark.parametrize("i", range(11, 64))
def test_class_bound_for_large_classes(i):
    assert math.exp(-(2 ** (i - 1)) / 36) <= 2.0 ** -(2 * i - 7)


def test_expected_bad_upper_bound_pieces():
    assert dyadic_tail_sum(11) == Fraction(1, 4)
    partial = sum(Fraction(2) ** (8 - i) for i in range(11, 200))
    assert Fraction(1, 4) - partial == Fraction(2) ** (8 - 199)
    assert dyadic_head_sum(10) <= 205
    direct = sum(2 ** (i + 1) * math.exp(-(2 ** (i - 1)) / 36) for i in range(1, 11))
    assert expected_bad_upper_bound() == pytest.approx(direct + 0.25, rel=1e-14)
    assert expected_bad_upper_bound() < 206


def test_respects_lists():
    L = ListAssignment.uniform(3, [0, 1, 2])
    assert respects_lists([2, 0, 1], L)
    assert not respects_lists([0, 1], ListAssignment(((1, 2), (1, 2))))
    assert respects_lists([], ListAssignment(()))


def test_list_assignment_validation():
    with pytest.raises(ValueError):
        ListAssignment(((0, 1), (0,)))
    with pytest.raises(ValueError):
        ListAssignment(((0, 0),))
    assert ListAssignment(((3, 1),)).lists == ((1, 3),)


def test_colouring_validation():
    with pytest.raises(ValueError):
        Colouring([0, 3], 3)
    c = Colouring.from_sequence([0, 4, 1])
    assert c.palette_size == 5 and c[1] == 4 and len(c) == 3


def test_colouring_round_trip():
    c = Colouring.from_sequence([2, 0, 1, 1])
    text = write_colouring(c)
    assert text == "0 2\n1 0\n2 1\n3 1\n"
    assert read_colouring("# c\n3 1\n0 2\n2 1\n1 0\n") == c
    with pytest.raises(ValueError):
        read_colouring("0 1\n2 1\n")
    with pytest.raises(ValueError):
        read_colouring("0 1\n0 2\n")


def test_lists_round_trip():
    L = ListAssignment(((0, 4, 2), (1, 2, 3)))
    assert read_lists(write_lists(L)) == L
