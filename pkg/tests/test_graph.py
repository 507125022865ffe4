"""graph_core: structure, distance-2 machinery, runs, signatures."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sparse2dc.families import complete, cycle, path, petersen, star
from sparse2dc.graph import (
    INFINITE_GIRTH,
    Graph,
    check_girth_mad_bound,
    connected_components,
    d_star,
    degree_two_runs,
    find_k_paths,
    girth,
    square,
    subdivide,
    two_distance_neighborhood,
    vertex_signature,
)

from conftest import bfs_distances, random_graph


def girth_oracle(g: Graph):
    """Independent girth: min over edges of dist in G-e plus one."""
    best = INFINITE_GIRTH
    for u, v in g.edges():
        h = Graph(g.n, [e for e in g.edges() if e != (u, v)])
        dist = bfs_distances(h, u)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


class TestGraphBasics:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 0)])

    def test_rejects_parallel(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph(2, [(0, 2)])

    def test_edge_count_matches_degree_sum(self):
        g = petersen()
        assert 2 * g.m == sum(g.degree(v) for v in g.vertices())

    def test_adjacency_sorted_symmetric(self):
        g = random_graph(random.Random(1), 12, 0.3)
        for v in g.vertices():
            assert list(g.adjacency[v]) == sorted(g.adjacency[v])
            for w in g.adjacency[v]:
                assert v in g.adjacency[w]


class TestSquare:
    def test_c5_squares_to_k5(self):
        assert square(cycle(5)) == complete(5)

    def test_petersen_squares_to_k10(self):
        assert square(petersen()) == complete(10)

    def test_edgeless_stays_edgeless(self):
        g = Graph(4, [])
        assert square(g).m == 0

    @given(st.integers(0, 400), st.integers(2, 12))
    @settings(max_examples=40, deadline=None)
    def test_square_matches_distance_oracle(self, seed, n):
        g = random_graph(random.Random(seed), n, 0.3)
        sq = square(g)
        for v in g.vertices():
            dist = bfs_distances(g, v)
            expect = {w for w, d in dist.items() if w != v and d <= 2}
            assert set(sq.adjacency[v]) == expect


class TestTwoDistanceNeighborhood:
    def test_star_center_sees_all_leaves(self):
        g = star(7)
        assert two_distance_neighborhood(g, 0) == frozenset(range(1, 8))
        assert d_star(g, 0) == 7

    def test_middle_of_four_path(self):
        # chain a-v1-v2-v3-v4-b with interior all degree 2
        g = path(6)
        assert d_star(g, 2) == 4
        assert d_star(g, 3) == 4

    def test_degree_sum_upper_bound(self):
        g = random_graph(random.Random(7), 14, 0.3)
        for v in g.vertices():
            bound = g.degree(v) + sum(g.degree(u) - 1 for u in g.adjacency[v])
            assert d_star(g, v) <= bound


class TestGirth:
    def test_c9(self):
        assert girth(cycle(9)) == 9

    def test_tree_is_acyclic(self):
        assert girth(path(8)) == INFINITE_GIRTH

    def test_petersen_matches_oracle(self):
        assert girth_oracle(petersen()) == 5
        assert girth(petersen()) == 5

    @given(st.integers(0, 300), st.integers(3, 11))
    @settings(max_examples=40, deadline=None)
    def test_matches_oracle_on_random_graphs(self, seed, n):
        g = random_graph(random.Random(seed), n, 0.25)
        assert girth(g) == girth_oracle(g)


class TestRuns:
    def test_explicit_three_path(self):
        # a-x-y-z-b with both anchors degree 3 via extra leaves... anchors
        # just need degree != 2, so give each anchor two extra leaves.
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (0, 6), (4, 7), (4, 8)]
        g = Graph(9, edges)
        paths = find_k_paths(g, 3)
        assert len(paths) == 1
        assert paths[0].endpoints == (0, 4)
        assert paths[0].internal == (1, 2, 3)

    def test_pure_cycle_reported_separately(self):
        runs, cycles = degree_two_runs(cycle(5))
        assert runs == []
        assert len(cycles) == 1 and sorted(cycles[0]) == [0, 1, 2, 3, 4]
        assert find_k_paths(cycle(5), 2) == []

    def test_double_subdivided_claw(self):
        g = subdivide(star(3), 2)
        paths = find_k_paths(g, 2)
        assert len(paths) == 3
        for p in paths:
            assert 0 in p.endpoints

    def test_closed_run_at_single_anchor(self):
        # pendant triangle of 2-vertices hanging off a degree-4 vertex
        g = Graph(6, [(0, 1), (1, 2), (2, 0), (0, 3), (0, 4), (4, 5)])
        runs, cycles = degree_two_runs(g)
        closed = [r for r in runs if r.closed]
        assert len(closed) == 1
        assert closed[0].endpoints == (0, 0)
        assert set(closed[0].internal) == {1, 2}
        assert not cycles

    @given(st.integers(0, 300), st.integers(4, 14))
    @settings(max_examples=40, deadline=None)
    def test_runs_partition_degree_two_vertices(self, seed, n):
        g = random_graph(random.Random(seed), n, 0.2)
        runs, cycles = degree_two_runs(g)
        seen: list[int] = []
        for r in runs:
            seen.extend(r.internal)
        for c in cycles:
            seen.extend(c)
        two_vertices = [v for v in g.vertices() if g.degree(v) == 2]
        assert sorted(seen) == sorted(two_vertices)
        for r in runs:
            r.validate(g)


class TestVertexSignature:
    def test_two_two_zero(self):
        # degree-3 vertex with two 2-paths and one high-degree neighbor
        edges = [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7),
                 (7, 8), (7, 9), (3, 10), (3, 11), (6, 12), (6, 13)]
        g = Graph(14, edges)
        assert vertex_signature(g, 0).matches((2, 2, 0))

    def test_two_two_two_zero(self):
        edges = []
        # three 2-paths from hub 0: (1,2), (3,4), (5,6) ending at 7,8,9
        for i, (a, b, end) in enumerate([(1, 2, 7), (3, 4, 8), (5, 6, 9)]):
            edges += [(0, a), (a, b), (b, end), (end, 10 + 2 * i), (end, 11 + 2 * i)]
        # plus one plain high-degree neighbor
        edges += [(0, 16), (16, 17), (16, 18), (16, 19), (16, 20)]
        g = Graph(21, edges)
        assert vertex_signature(g, 0).matches((2, 2, 2, 0))

    def test_star_center_all_zero(self):
        g = star(5)
        sig = vertex_signature(g, 0)
        assert sig.entries == (0, 0, 0, 0, 0)
        assert not sig.truncated

    def test_loop_walk_truncates(self):
        g = Graph(6, [(0, 1), (1, 2), (2, 0), (0, 3), (0, 4), (4, 5)])
        sig = vertex_signature(g, 0)
        assert sig.truncated
        assert -1 in sig.exact

    @given(st.integers(0, 200), st.integers(4, 12))
    @settings(max_examples=30, deadline=None)
    def test_signature_consistent_with_runs(self, seed, n):
        g = random_graph(random.Random(seed), n, 0.25)
        runs, _ = degree_two_runs(g)
        for v in g.vertices():
            if g.degree(v) < 1 or g.degree(v) == 2:
                continue
            sig = vertex_signature(g, v)
            if sig.truncated:
                continue
            # each positive entry is the length of a run anchored at v
            anchored = sorted(
                (r.length for r in runs if v in r.endpoints and not r.closed),
                reverse=True,
            )
            positives = sorted((e for e in sig.exact if e > 0), reverse=True)
            assert positives == anchored


class TestSubdivide:
    def test_identity_at_zero(self):
        g = complete(4)
        assert subdivide(g, 0) == g

    def test_triangle_twice_is_c9(self):
        g = subdivide(cycle(3), 2)
        assert g.n == 9 and g.m == 9
        assert girth(g) == 9
        assert all(g.degree(v) == 2 for v in g.vertices())

    def test_vertex_and_edge_counts(self):
        g = petersen()
        h = subdivide(g, 3)
        assert h.n == g.n + 3 * g.m
        assert h.m == 4 * g.m

    @given(st.integers(0, 200), st.integers(1, 3))
    @settings(max_examples=25, deadline=None)
    def test_girth_multiplies(self, seed, t):
        g = random_graph(random.Random(seed), 8, 0.35)
        base = girth(g)
        if base is INFINITE_GIRTH:
            assert girth(subdivide(g, t)) is INFINITE_GIRTH
        else:
            assert girth(subdivide(g, t)) >= (t + 1) * base


class TestGirthMadBound:
    def test_strict_boundary_fails(self):
        assert check_girth_mad_bound(Fraction(18, 7), 9) is False

    def test_mad_two_always_passes(self):
        for g in (3, 9, 100):
            assert check_girth_mad_bound(Fraction(2), g) is True

    def test_five_halves_at_girth_nine(self):
        assert check_girth_mad_bound(Fraction(5, 2), 9) is True

    def test_rejects_small_girth(self):
        with pytest.raises(ValueError):
            check_girth_mad_bound(Fraction(2), 2)


def test_components():
    g = Graph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)])
    comps = connected_components(g)
    assert comps == [[0, 1, 2], [3, 4, 5], [6]]


def test_three_path_middle_reach():
    # u-p1-p2-p3-v: the middle of a 3-run sees exactly 4 vertices
    from sparse2dc.families import spider

    g = spider(3, 4)  # legs 0-1-2-3-4; vertex 2 is a 3-run middle
    assert d_star(g, 2) == 4
