"""Coloring: validity, exact chi^2, decision search, Hall machinery."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from sparse2dc.coloring import (
    Coloring,
    SearchBudgetExceeded,
    chi2_exact,
    color_2distance,
    hall_check,
    is_valid_2distance,
    list_extend,
)
from sparse2dc.families import cycle, path, petersen, star
from sparse2dc.graph import Graph

from conftest import bfs_distances, random_graph


def chi2_oracle(g: Graph, k_max: int = 12) -> int:
    """Independent exhaustive k-sweep over colorings of the square."""
    pairs = []
    for v in g.vertices():
        dist = bfs_distances(g, v)
        pairs.extend((v, w) for w, d in dist.items() if v < w and d <= 2)
    for k in range(1, k_max + 1):
        for assign in itertools.product(range(k), repeat=g.n):
            if all(assign[u] != assign[w] for u, w in pairs):
                return k
    raise AssertionError("oracle sweep exhausted")


def sdr_oracle(lists) -> bool:
    """Exhaustive system-of-distinct-representatives search."""
    order = sorted(range(len(lists)), key=lambda i: len(lists[i]))

    def go(i, used):
        if i == len(order):
            return True
        for c in lists[order[i]]:
            if c not in used:
                if go(i + 1, used | {c}):
                    return True
        return False

    return go(0, frozenset())


class TestValidity:
    def test_rainbow_c5_valid(self):
        c = Coloring(5, {i: i + 1 for i in range(5)})
        ok, violation = is_valid_2distance(cycle(5), c)
        assert ok and violation is None

    def test_repeat_on_c5_invalid(self):
        c = Coloring(5, {0: 1, 1: 2, 2: 3, 3: 1, 4: 4})
        ok, violation = is_valid_2distance(cycle(5), c)
        assert not ok
        assert violation == (0, 3, 2)

    def test_proper_but_not_2distance(self):
        c = Coloring(3, {0: 1, 1: 2, 2: 1})
        ok, violation = is_valid_2distance(path(3), c)
        assert not ok and violation == (0, 2, 2)

    def test_partial_rejected(self):
        with pytest.raises(ValueError):
            is_valid_2distance(path(3), Coloring(3, {0: 1}))


class TestChi2:
    def test_c5_is_five(self):
        assert chi2_exact(cycle(5)) == 5

    def test_petersen_is_ten(self):
        assert chi2_exact(petersen()) == 10

    def test_star_is_eight(self):
        assert chi2_exact(star(7)) == 8

    def test_c9_is_three(self):
        assert chi2_exact(cycle(9)) == 3

    @given(st.integers(0, 400))
    @settings(max_examples=25, deadline=None)
    def test_matches_exhaustive_sweep(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 7)
        g = random_graph(rng, n, 0.4)
        assert chi2_exact(g) == chi2_oracle(g)

    @given(st.integers(0, 200))
    @settings(max_examples=20, deadline=None)
    def test_monotone_under_subgraphs(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, 8, 0.4)
        if g.m == 0:
            return
        dropped = rng.choice(g.edges())
        h = Graph(g.n, [e for e in g.edges() if e != dropped])
        assert chi2_exact(h) <= chi2_exact(g)

    @given(st.integers(0, 200))
    @settings(max_examples=25, deadline=None)
    def test_trivial_lower_bound(self, seed):
        g = random_graph(random.Random(seed), 9, 0.3)
        if g.m:
            assert chi2_exact(g) >= g.max_degree() + 1

    def test_budget_interval(self):
        g = random_graph(random.Random(5), 14, 0.5)
        result = chi2_exact(g, budget=1)
        exact = chi2_exact(g)
        if isinstance(result, tuple):
            low, high = result
            assert low <= exact <= high
        else:
            assert result == exact


class TestDecision:
    def test_c9_three_colorable_pattern(self):
        c = color_2distance(cycle(9), 3)
        assert c is not None
        assert is_valid_2distance(cycle(9), c)[0]

    def test_star_needs_eight(self):
        assert color_2distance(star(7), 7) is None
        c = color_2distance(star(7), 8)
        assert c is not None and is_valid_2distance(star(7), c)[0]

    @given(st.integers(0, 200))
    @settings(max_examples=20, deadline=None)
    def test_delta_squared_plus_one_always_succeeds(self, seed):
        g = random_graph(random.Random(seed), 8, 0.3)
        k = max(1, g.max_degree() ** 2 + 1)
        c = color_2distance(g, k)
        assert c is not None
        assert is_valid_2distance(g, c)[0]

    def test_budget_exhaustion_is_distinct(self):
        g = random_graph(random.Random(11), 16, 0.45)
        k = chi2_oracle_upper = g.max_degree() + 1
        try:
            result = color_2distance(g, k, budget=1)
        except SearchBudgetExceeded:
            return  # distinct signal, as specified
        # budget may have been enough; then the answer must be real
        assert result is None or is_valid_2distance(g, result)[0]


class TestHall:
    def test_two_identical_singletons(self):
        assert hall_check([{1}, {1}]) is False

    def test_three_pairs(self):
        assert hall_check([{1, 2}, {2, 3}, {1, 3}]) is True

    @given(st.integers(0, 2000))
    @settings(max_examples=150, deadline=None)
    def test_matches_exhaustive_sdr(self, seed):
        rng = random.Random(seed)
        count = rng.randint(1, 8)
        lists = [
            sorted(rng.sample(range(1, 9), rng.randint(0, 6)))
            for _ in range(count)
        ]
        assert hall_check(lists) == sdr_oracle(lists)


class TestListExtend:
    def test_lone_vertex_with_room(self):
        g = star(7)
        partial = Coloring(8, {v: v for v in range(1, 8)})
        out = list_extend(g, partial, [0])
        assert out and out.get(0) == 8

    def test_blocking_vertex_reported(self):
        g = star(7)
        partial = Coloring(7, {v: v for v in range(1, 8)})
        out = list_extend(g, partial, [0])
        assert not out
        assert out.vertex == 0
        assert set(out.seen.values()) == set(range(1, 8))

    def test_simultaneous_mode_uses_matching(self):
        # two conflicting vertices whose lists force a swap
        g = path(3)  # 0-1-2, all within distance 2
        partial = Coloring(3, {1: 3})
        out = list_extend(g, partial, [0, 2], simultaneous=True)
        assert out
        assert out.get(0) != out.get(2)
        assert is_valid_2distance(g, out)[0]

    def test_already_colored_target_rejected(self):
        with pytest.raises(ValueError):
            list_extend(path(3), Coloring(3, {0: 1}), [0])


def test_parallel_calls_are_pure():
    """Graphs are immutable and operations pure, so concurrent identical
    calls must agree with the sequential result."""
    from concurrent.futures import ThreadPoolExecutor

    from sparse2dc.reductions import constructive_color

    g = cycle(30)
    baseline = constructive_color(g).colors
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda _: constructive_color(g).colors, range(8)))
    assert all(r == baseline for r in results)
