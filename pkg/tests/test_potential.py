"""Potential function: closure min-cut vs brute force, exact mad, surgery."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sparse2dc.families import cycle, path, petersen, star
from sparse2dc.graph import Graph, subdivide
from sparse2dc.potential import (
    DENSITY_BOUND,
    PotentialParams,
    add_path,
    mad_bruteforce,
    mad_exact,
    rho,
    rho_star,
    rho_star_bruteforce,
    verify_potential_laws,
)

from conftest import random_graph, random_sparse_graph


class TestRho:
    def test_single_vertex(self):
        assert rho(star(3), {1}) == 9

    def test_three_path_interior(self):
        # u-p1-p2-p3-v: the three interior vertices span two edges
        g = path(5)
        assert rho(g, {1, 2, 3}) == 9 * 3 - 7 * 2 == 13

    def test_whole_five_cycle(self):
        assert rho(cycle(5), set(range(5))) == 9 * 5 - 7 * 5 == 10

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            rho(cycle(5), {5})

    def test_params_validated(self):
        with pytest.raises(ValueError):
            PotentialParams(0, 7)

    @given(st.integers(0, 400))
    @settings(max_examples=60, deadline=None)
    def test_rho_submodular(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, 10, 0.35)
        a = frozenset(v for v in range(10) if rng.random() < 0.4)
        b = frozenset(v for v in range(10) if rng.random() < 0.4)
        assert rho(g, a) + rho(g, b) >= rho(g, a | b) + rho(g, a & b)


class TestRhoStar:
    def test_empty_set_is_zero_on_sparse_graphs(self):
        # the empty set always attains 0, so the minimum is 0 exactly when
        # no set has negative potential (density at most 18/7)
        res = rho_star(subdivide(star(7), 1), frozenset())
        assert res.value == 0 and res.witness == frozenset()

    def test_empty_set_never_positive(self):
        assert rho_star(petersen(), frozenset()).value <= 0

    def test_sparse_graph_nonnegative(self):
        g = subdivide(star(7), 1)  # mad below 18/7
        for v in g.vertices():
            assert rho_star(g, {v}).value >= 0

    def test_full_set_matches_rho(self):
        g = petersen()
        full = frozenset(g.vertices())
        assert rho_star_bruteforce(g, full).value == rho(g, full)

    def test_single_edge_pair(self):
        g = Graph(2, [(0, 1)])
        assert rho_star_bruteforce(g, {0, 1}).value == 11

    def test_bruteforce_refuses_large(self):
        with pytest.raises(ValueError):
            rho_star_bruteforce(Graph(21, []), set())

    @given(st.integers(0, 1000))
    @settings(max_examples=80, deadline=None)
    def test_mincut_matches_bruteforce(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 12)
        g = random_graph(rng, n, rng.uniform(0.1, 0.5))
        a = frozenset(v for v in range(n) if rng.random() < 0.3)
        fast = rho_star(g, a)
        slow = rho_star_bruteforce(g, a)
        assert fast.value == slow.value
        assert a <= fast.witness
        assert rho(g, fast.witness) == fast.value

    @given(st.integers(0, 300))
    @settings(max_examples=40, deadline=None)
    def test_rho_star_below_explicit_supersets(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, 10, 0.3)
        a = frozenset(v for v in range(10) if rng.random() < 0.3)
        value = rho_star(g, a).value
        for _ in range(10):
            s = a | frozenset(v for v in range(10) if rng.random() < 0.4)
            assert value <= rho(g, s)


class TestMad:
    def test_cycle_is_two(self):
        for n in (3, 5, 9, 12):
            assert mad_exact(cycle(n))[0] == 2

    def test_tree_formula(self):
        for n in (2, 5, 9):
            g = path(n)
            assert mad_exact(g)[0] == Fraction(2 * (n - 1), n)

    def test_petersen_matches_oracle(self):
        assert mad_bruteforce(petersen()) == 3
        value, witness = mad_exact(petersen())
        assert value == 3
        assert witness == frozenset(range(10))

    def test_subdivided_star_value(self):
        g = subdivide(star(7), 1)
        value, _ = mad_exact(g)
        assert value == Fraction(28, 15)
        assert value < DENSITY_BOUND

    def test_empty_graph_rejected(self):
        with pytest.raises(ValueError):
            mad_exact(Graph(0, []))

    def test_edgeless_graph_is_zero(self):
        assert mad_exact(Graph(4, []))[0] == 0

    @given(st.integers(0, 600))
    @settings(max_examples=60, deadline=None)
    def test_matches_bruteforce(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 11)
        g = random_graph(rng, n, rng.uniform(0.1, 0.6))
        value, witness = mad_exact(g)
        assert value == mad_bruteforce(g)
        if g.m:
            assert Fraction(2 * g.edge_count_inside(witness), len(witness)) == value

    @given(st.integers(0, 200))
    @settings(max_examples=30, deadline=None)
    def test_threshold_equivalence(self, seed):
        # mad <= 18/7 exactly when the default potential is nonnegative
        rng = random.Random(seed)
        g = random_sparse_graph(rng, rng.randint(2, 12))
        below = mad_exact(g)[0] <= DENSITY_BOUND
        nonneg = rho_star(g, frozenset()).value >= 0
        assert below == nonneg


class TestAddPath:
    def test_bare_edge(self):
        g = path(4)
        h = add_path(g, 0, 3, 0)
        assert h.m == g.m + 1 and h.n == g.n

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ValueError):
            add_path(path(4), 0, 1, 0)

    def test_three_internal_vertices(self):
        g = cycle(6)
        h = add_path(g, 0, 3, 3)
        assert h.n == g.n + 3 and h.m == g.m + 4
        for v in range(g.n, h.n):
            assert h.degree(v) == 2

    @given(st.integers(0, 800))
    @settings(max_examples=60, deadline=None)
    def test_safe_surgery_keeps_potential_nonnegative(self, seed):
        # whenever rho*({u,v}) clears the 7-2k threshold, the enlarged
        # graph keeps every potential nonnegative (checked exhaustively)
        rng = random.Random(seed)
        g = random_sparse_graph(rng, rng.randint(3, 10))
        if rho_star(g, frozenset()).value < 0:
            return
        u, v = rng.sample(range(g.n), 2)
        k = rng.randint(0, 3)
        if k == 0 and g.has_edge(u, v):
            return
        if rho_star(g, {u, v}).value < 7 - 2 * k:
            return
        h = add_path(g, u, v, k)
        assert rho_star_bruteforce(h, frozenset()).value >= 0
        assert mad_exact(h)[0] <= DENSITY_BOUND


class TestLaws:
    @given(st.integers(0, 120))
    @settings(max_examples=12, deadline=None)
    def test_no_violations_on_random_graphs(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(2, 9), 0.35)
        report = verify_potential_laws(g, trials=6, rng=rng)
        assert report.ok, report.violations

    def test_counts_recorded(self):
        report = verify_potential_laws(cycle(6), trials=4, rng=random.Random(0))
        assert report.checked["superset"] == 4
        assert report.checked["submodular"] == 4
