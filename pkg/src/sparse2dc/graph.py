"""Immutable simple undirected graphs and their distance-2 structure.

Vertices are dense 0-based integers.  A ``Graph`` is frozen after
construction; every operation in this package is a pure function that
returns fresh values, so graphs can be shared freely between threads.

Vertex subsets are plain ``frozenset[int]`` throughout the package.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

INFINITE_GIRTH = float("inf")

#: Runs of consecutive 2-vertices longer than this are reported truncated.
RUN_CAP = 4


class Graph:
    """Simple undirected graph with sorted adjacency lists.

    Invariants: no self-loops, no parallel edges, symmetric adjacency,
    vertex ids exactly ``0..n-1``.
    """

    __slots__ = ("n", "adjacency", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        canon: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise ValueError(f"parallel edge ({e[0]},{e[1]})")
            canon.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in adj
        )
        self._edges: tuple[tuple[int, int], ...] = tuple(sorted(canon))

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) with u < v, sorted."""
        return self._edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def vertices(self) -> range:
        return range(self.n)

    def edge_count_inside(self, subset: frozenset[int] | set[int]) -> int:
        """Number of edges with both endpoints in ``subset``."""
        count = 0
        for v in subset:
            for w in self.adjacency[v]:
                if w > v and w in subset:
                    count += 1
        return count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class PathDescriptor:
    """A maximal run of degree-2 vertices between two anchor vertices.

    ``endpoints`` are the bordering vertices (equal when the run leaves and
    re-enters the same anchor).  ``internal`` lists the run's degree-2
    vertices in path order from ``endpoints[0]`` to ``endpoints[1]``.
    """

    endpoints: tuple[int, int]
    internal: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.internal)

    @property
    def closed(self) -> bool:
        return self.endpoints[0] == self.endpoints[1]

    def validate(self, g: Graph) -> None:
        u, v = self.endpoints
        chain = [u, *self.internal, v]
        for x in self.internal:
            if g.degree(x) != 2:
                raise ValueError(f"internal vertex {x} has degree {g.degree(x)}")
        for a, b in zip(chain, chain[1:]):
            if not g.has_edge(a, b):
                raise ValueError(f"missing path edge ({a},{b})")


@dataclass(frozen=True)
class VertexSignature:
    """Run lengths of consecutive 2-vertices along each incident edge.

    ``entries`` holds one value per incident edge, sorted descending; a run
    longer than ``RUN_CAP`` or one that loops back to the vertex is capped
    and sets ``truncated``.  ``exact`` keeps the uncapped lengths (loops are
    reported as -1) for diagnostics.
    """

    degree: int
    entries: tuple[int, ...]
    truncated: bool
    exact: tuple[int, ...]

    def matches(self, pattern: Sequence[int]) -> bool:
        """Exact signature match, e.g. ``matches((2, 2, 0))``; requires no
        truncated walks."""
        return not self.truncated and self.entries == tuple(
            sorted(pattern, reverse=True)
        )


def square(g: Graph) -> Graph:
    """Graph on the same vertices joining every pair at distance 1 or 2."""
    edges = set(g.edges())
    for v in g.vertices():
        nbrs = g.adjacency[v]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                a, b = nbrs[i], nbrs[j]
                edges.add((a, b) if a < b else (b, a))
    return Graph(g.n, edges)


def two_distance_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """All vertices at distance 1 or 2 from ``v``, excluding ``v``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    out = set(g.adjacency[v])
    for w in g.adjacency[v]:
        out.update(g.adjacency[w])
    out.discard(v)
    return frozenset(out)


def d_star(g: Graph, v: int) -> int:
    """Size of the 2-distance neighborhood of ``v``."""
    return len(two_distance_neighborhood(g, v))


def girth(g: Graph):
    """Length of a shortest cycle; ``INFINITE_GIRTH`` for forests.

    Per-vertex BFS, O(n*m); adequate at the scale this package targets.
    """
    best = INFINITE_GIRTH
    for root in g.vertices():
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if best is not INFINITE_GIRTH and 2 * dist[x] >= best:
                break
            for y in g.adjacency[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    cand = dist[x] + dist[y] + 1
                    if cand < best:
                        best = cand
    return best


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex lists of the connected components, each sorted."""
    seen = [False] * g.n
    comps: list[list[int]] = []
    for s in g.vertices():
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def degree_two_runs(g: Graph) -> tuple[list[PathDescriptor], list[list[int]]]:
    """Decompose the degree-2 vertices into maximal runs and pure cycles.

    Returns ``(runs, cycles)`` where each run is anchored at non-2-degree
    vertices on both sides (possibly the same one) and each cycle is a
    connected component consisting entirely of 2-vertices, listed in cyclic
    order.  Every degree-2 vertex appears in exactly one run or cycle.
    """
    used = [False] * g.n
    runs: list[PathDescriptor] = []
    for u in g.vertices():
        if g.degree(u) == 2:
            continue
        for w in g.adjacency[u]:
            if g.degree(w) != 2 or used[w]:
                continue
            internal = [w]
            used[w] = True
            prev, cur = u, w
            while True:
                a, b = g.adjacency[cur]
                nxt = b if a == prev else a
                if g.degree(nxt) != 2:
                    runs.append(_canonical_run(u, nxt, internal))
                    break
                if used[nxt]:
                    # Only possible by re-entering this same run's start
                    # from the far side of a closed walk; cannot happen for
                    # simple graphs, guard anyway.
                    raise AssertionError("run walk revisited a vertex")
                internal.append(nxt)
                used[nxt] = True
                prev, cur = cur, nxt
    cycles: list[list[int]] = []
    for s in g.vertices():
        if g.degree(s) != 2 or used[s]:
            continue
        cyc = [s]
        used[s] = True
        prev, cur = s, g.adjacency[s][0]
        while cur != s:
            cyc.append(cur)
            used[cur] = True
            a, b = g.adjacency[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(cyc)
    return runs, cycles


def _canonical_run(u: int, v: int, internal: list[int]) -> PathDescriptor:
    if v < u or (v == u and internal and internal[-1] < internal[0]):
        return PathDescriptor((v, u), tuple(reversed(internal)))
    return PathDescriptor((u, v), tuple(internal))


def find_k_paths(g: Graph, k: int) -> list[PathDescriptor]:
    """All maximal degree-2 runs of length exactly ``k`` between anchors.

    Pure cycles of 2-vertices are not runs and are reported separately by
    :func:`degree_two_runs`.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    runs, _ = degree_two_runs(g)
    if k == 0:
        return []
    return sorted(
        (r for r in runs if r.length == k),
        key=lambda r: (r.endpoints, r.internal),
    )


def vertex_signature(g: Graph, v: int) -> VertexSignature:
    """Per-edge lengths of the 2-vertex runs starting at ``v``.

    A walk that returns to ``v`` contributes an exact entry of -1 (loop)
    and sets the truncation flag, as does any run longer than ``RUN_CAP``.
    """
    if g.degree(v) < 1:
        raise ValueError(f"vertex {v} has degree 0")
    exact: list[int] = []
    truncated = False
    for w in g.adjacency[v]:
        if g.degree(w) != 2:
            exact.append(0)
            continue
        count = 1
        prev, cur = v, w
        looped = False
        while True:
            a, b = g.adjacency[cur]
            nxt = b if a == prev else a
            if nxt == v:
                looped = True
                break
            if g.degree(nxt) != 2:
                break
            count += 1
            prev, cur = cur, nxt
        if looped:
            exact.append(-1)
            truncated = True
        else:
            exact.append(count)
            if count > RUN_CAP:
                truncated = True
    entries = tuple(
        sorted((min(e, RUN_CAP) if e >= 0 else RUN_CAP for e in exact), reverse=True)
    )
    return VertexSignature(g.degree(v), entries, truncated, tuple(sorted(exact, reverse=True)))


def subdivide(g: Graph, t: int) -> Graph:
    """Replace every edge by a path with ``t`` new internal 2-vertices."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return g
    edges: list[tuple[int, int]] = []
    nxt = g.n
    for u, v in g.edges():
        chain = [u] + list(range(nxt, nxt + t)) + [v]
        nxt += t
        edges.extend(zip(chain, chain[1:]))
    return Graph(nxt, edges)


def remove_edges(g: Graph, drop: Iterable[tuple[int, int]]) -> Graph:
    """Copy of ``g`` without the given edges (ids unchanged)."""
    gone = {(min(e), max(e)) for e in drop}
    for e in gone:
        if e not in set(g.edges()):
            raise ValueError(f"edge {e} not present")
    return Graph(g.n, [e for e in g.edges() if e not in gone])


def remove_vertices(g: Graph, drop: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the kept vertices plus the old->new id map."""
    gone = set(drop)
    keep = [v for v in g.vertices() if v not in gone]
    remap = {old: new for new, old in enumerate(keep)}
    edges = [
        (remap[u], remap[v])
        for u, v in g.edges()
        if u not in gone and v not in gone
    ]
    return Graph(len(keep), edges), remap


def add_edges(g: Graph, extra: Iterable[tuple[int, int]]) -> Graph:
    """Copy of ``g`` with the given edges added (must not already exist)."""
    return Graph(g.n, list(g.edges()) + list(extra))


def check_girth_mad_bound(mad: Fraction, g: int) -> bool:
    """Exact test of the planar sparsity bound (mad-2)(g-2) < 4."""
    if g < 3:
        raise ValueError("girth must be at least 3")
    return (Fraction(mad) - 2) * (g - 2) < 4
