import random
from fractions import Fraction

import pytest

from growthtw.errors import (
    DegenerateInputError,
    InvariantViolationError,
    PreconditionError,
    RangeError,
)
from growthtw.generators import cycle, grid, path, random_cubic, star
from growthtw.graphs import Graph
from growthtw.growth import growth_constant
from growthtw.separators import (
    Separation,
    bfs_layer_separation,
    check_separation,
    iteration_cap,
    linear_growth_separator,
    rebalance_to_two_thirds,
    separate_possibly_disconnected,
    two_thirds_separation,
)


def test_layer_split_on_p7():
    # Worked through by hand: center 3, layers {3},{2,4},{1,5},{0,6}; all thin
    # at c=3, the median thin index is 2, so A = layers 0..2, B = layers 2..3.
    sep, trace = bfs_layer_separation(path(7), None, 3)
    assert trace.center == 3
    assert trace.p == 3
    assert trace.layer_sizes == (1, 2, 2, 2)
    assert trace.thick == ()
    assert trace.thin == (1, 2, 3)
    assert trace.chosen_j == 2
    assert sep.a == frozenset({1, 2, 3, 4, 5})
    assert sep.b == frozenset({0, 1, 5, 6})
    assert sep.order == 2


def test_layer_split_edge_cases():
    with pytest.raises(DegenerateInputError):
        bfs_layer_separation(Graph(1), None, 1)
    with pytest.raises(PreconditionError):
        bfs_layer_separation(Graph(4, [(0, 1), (2, 3)]), None, 1)
    with pytest.raises(RangeError):
        bfs_layer_separation(path(4), None, Fraction(1, 2))
    # Two vertices: single layer pair, split at j=1.
    sep, trace = bfs_layer_separation(path(2), None, 1)
    assert sep.order <= 1 and sep.a | sep.b == frozenset({0, 1})


def test_layer_split_restricted_set():
    g = path(9)
    X = frozenset({2, 3, 4, 5, 6})
    sep, trace = bfs_layer_separation(g, X, 3)
    assert sep.a | sep.b == X
    assert check_separation(g, X, sep, Fraction(11, 12)).valid


def test_layer_split_guarantees_on_families():
    for g in [path(30), cycle(17), grid(4), star(12), random_cubic(30, seed=3)]:
        c = growth_constant(g)
        sep, trace = bfs_layer_separation(g, None, c)
        report = check_separation(g, None, sep, 1 - Fraction(1, 4 * c))
        assert report.valid
        assert sep.order < 2 * c
        assert report.exclusive_ratio <= 1 - Fraction(1, 4 * c)
        # Thick layers fill at most half the depth.
        assert 2 * len(trace.thick) <= trace.p


def test_check_separation_rejects_bad_pairs():
    g = path(5)
    bad = Separation(a=frozenset({0, 1}), b=frozenset({2, 3, 4}), host_size=5)
    report = check_separation(g, None, bad, Fraction(2, 3))
    assert not report.valid
    assert "crossing edge" in report.failure

    uncovered = Separation(a=frozenset({0, 1}), b=frozenset({3, 4}), host_size=5)
    assert "cover" in check_separation(g, None, uncovered, Fraction(2, 3)).failure

    outside = Separation(a=frozenset({0, 9}), b=frozenset({1}), host_size=2)
    report = check_separation(g, frozenset({0, 1}), outside, Fraction(2, 3))
    assert "outside" in report.failure


def test_check_separation_numbers():
    g = path(7)
    sep = Separation(a=frozenset({0, 1, 2, 3}), b=frozenset({3, 4, 5, 6}), host_size=7)
    report = check_separation(g, None, sep, Fraction(2, 3))
    assert report.valid
    assert report.order == 1
    assert report.sides == (3, 1, 3)
    assert report.alpha_achieved == Fraction(4, 7)
    assert report.exclusive_ratio == Fraction(3, 7)
    assert report.within_alpha


def test_disconnected_lifting_two_paths():
    # Two disjoint P_4s: the smaller-component peel is already 2/3-balanced.
    g = Graph(8, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)])
    sep = linear_growth_separator(g, None, 3)
    report = check_separation(g, None, sep, Fraction(11, 12))
    assert report.valid
    assert sep.order == 0
    assert set(map(len, (sep.a, sep.b))) == {4}


def test_disconnected_lifting_unbalanced():
    # P_12 plus an isolated vertex forces recursion into the big component.
    g = Graph(13, [(i, i + 1) for i in range(11)])
    sep = linear_growth_separator(g, None, 3)
    report = check_separation(g, None, sep, Fraction(11, 12))
    assert report.valid
    assert max(len(sep.a), len(sep.b)) <= Fraction(11, 12) * 13


def test_separate_possibly_disconnected_validates_alpha():
    g = path(4)
    with pytest.raises(RangeError):
        separate_possibly_disconnected(g, None, Fraction(1, 2), lambda Y: None)
    with pytest.raises(PreconditionError):
        separate_possibly_disconnected(g, frozenset(), Fraction(2, 3), lambda Y: None)


def test_iteration_cap_values():
    assert iteration_cap(Fraction(2, 3)) == 1
    assert iteration_cap(Fraction(3, 4)) == 2   # (3/4)^2 = 9/16 <= 2/3
    assert iteration_cap(Fraction(11, 12)) == 5  # (11/12)^5 ~ 0.648
    with pytest.raises(RangeError):
        iteration_cap(Fraction(1, 2))
    with pytest.raises(RangeError):
        iteration_cap(1)


def test_rebalance_terminates_within_cap():
    for g in [path(40), cycle(25), grid(5), random_cubic(50, seed=5)]:
        c = growth_constant(g)
        sep, calls = two_thirds_separation(g, None, c)
        alpha = max(Fraction(2, 3), 1 - Fraction(1, 4 * c))
        assert calls <= iteration_cap(alpha)
        report = check_separation(g, None, sep, Fraction(2, 3))
        assert report.valid
        assert 3 * max(*sep.exclusive_sides) <= 2 * g.n


def test_rebalance_detects_broken_oracle():
    # An oracle that always piles everything on one side can never rebalance.
    g = path(30)

    def bad_oracle(Y):
        return Separation(a=frozenset(Y), b=frozenset({min(Y)}), host_size=len(Y))

    with pytest.raises(InvariantViolationError):
        rebalance_to_two_thirds(g, None, Fraction(11, 12), bad_oracle)


def test_rebalance_single_call_when_balanced():
    g = path(9)
    sep, calls = two_thirds_separation(g, None, 3)
    assert calls == 1


def test_layer_split_order_bound_random():
    rng = random.Random(17)
    for _ in range(20):
        n = rng.randint(2, 12)
        extra = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(extra)
        g = Graph(n, [(i, i + 1) for i in range(n - 1)] + extra[: rng.randint(0, 6)])
        c = growth_constant(g)
        sep, trace = bfs_layer_separation(g, None, c)
        assert sep.order < 2 * c
        assert check_separation(g, None, sep, 1 - Fraction(1, 4 * c)).valid
