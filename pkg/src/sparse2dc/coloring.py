"""2-distance colorings: validity, exact chromatic search, list extension.

Colors are integers ``1..k``.  A total coloring is valid when no two
vertices at distance at most 2 share a color, i.e. when it properly colors
the square graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, square, two_distance_neighborhood
from .matching import has_distinct_representatives, maximum_bipartite_matching


class SearchBudgetExceeded(Exception):
    """Exact search ran out of decision nodes before proving an answer."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exceeded after {nodes} nodes")
        self.nodes = nodes


class Coloring:
    """Partial or total map vertex -> color in 1..k."""

    __slots__ = ("k", "colors")

    def __init__(self, k: int, colors: dict[int, int] | None = None):
        if k < 1:
            raise ValueError("palette size must be at least 1")
        self.k = k
        self.colors: dict[int, int] = dict(colors or {})
        for v, c in self.colors.items():
            if not 1 <= c <= k:
                raise ValueError(f"color {c} outside palette 1..{k}")

    def get(self, v: int) -> int | None:
        return self.colors.get(v)

    def set(self, v: int, c: int) -> None:
        if not 1 <= c <= self.k:
            raise ValueError(f"color {c} outside palette 1..{self.k}")
        self.colors[v] = c

    def unset(self, v: int) -> None:
        self.colors.pop(v, None)

    def copy(self) -> "Coloring":
        return Coloring(self.k, self.colors)

    def is_total(self, g: Graph) -> bool:
        return all(v in self.colors for v in g.vertices())

    def as_list(self, g: Graph) -> list[int | None]:
        return [self.colors.get(v) for v in g.vertices()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.k == other.k and self.colors == other.colors

    def __repr__(self) -> str:
        return f"Coloring(k={self.k}, assigned={len(self.colors)})"


@dataclass(frozen=True)
class ExtendFailure:
    """Falsy result of a failed list extension.

    Carries the first vertex whose available list emptied, together with
    the colors it sees at distance at most 2.
    """

    vertex: int
    seen: dict[int, int]
    palette: int

    def __bool__(self) -> bool:
        return False


def is_valid_2distance(g: Graph, c: Coloring):
    """Validity of a total coloring; returns (ok, first violation).

    The violation, when present, is ``(u, v, dist)`` with dist 1 or 2.
    """
    if not c.is_total(g):
        missing = next(v for v in g.vertices() if c.get(v) is None)
        raise ValueError(f"coloring is partial (vertex {missing} unassigned)")
    for u, v in g.edges():
        if c.get(u) == c.get(v):
            return False, (u, v, 1)
    for v in g.vertices():
        nbrs = g.adjacency[v]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                a, b = nbrs[i], nbrs[j]
                if not g.has_edge(a, b) and c.get(a) == c.get(b):
                    return False, ((a, b, 2) if a < b else (b, a, 2))
    return True, None


def seen_colors(g: Graph, c: Coloring, v: int) -> dict[int, int]:
    """Colors assigned within distance 2 of v, as {neighbor: color}."""
    out: dict[int, int] = {}
    for w in two_distance_neighborhood(g, v):
        col = c.get(w)
        if col is not None:
            out[w] = col
    return out


def available_colors(g: Graph, c: Coloring, v: int) -> list[int]:
    used = set(seen_colors(g, c, v).values())
    return [col for col in range(1, c.k + 1) if col not in used]


def square_adjacency(g: Graph) -> list[set[int]]:
    sq = square(g)
    return [set(sq.adjacency[v]) for v in range(sq.n)]


def _peel(adj: list[set[int]], vertices: set[int], k: int) -> tuple[set[int], list[int]]:
    """Iteratively shed vertices with fewer than k live neighbors.

    Returns the surviving core and the peel order; re-coloring the peeled
    vertices in reverse order is always possible with k colors.
    """
    live = set(vertices)
    deg = {v: len(adj[v] & live) for v in live}
    stack = [v for v in sorted(live) if deg[v] < k]
    order: list[int] = []
    queued = set(stack)
    while stack:
        v = stack.pop()
        if v not in live:
            continue
        live.discard(v)
        order.append(v)
        for w in adj[v]:
            if w in live:
                deg[w] -= 1
                if deg[w] < k and w not in queued:
                    stack.append(w)
                    queued.add(w)
    return live, order


def _decide_k_colorable(
    adj: list[set[int]],
    core: set[int],
    k: int,
    budget: int | None,
    counter: list[int],
) -> dict[int, int] | None:
    """Exact decision search on the core; DSATUR order, symmetry broken by
    capping fresh colors at max-used+1.  Raises SearchBudgetExceeded."""
    if not core:
        return {}
    order_pool = sorted(core)
    colors: dict[int, int] = {}
    live_deg = {v: len(adj[v] & core) for v in core}

    def choose() -> int | None:
        best = None
        best_key = None
        for v in order_pool:
            if v in colors:
                continue
            sat = len({colors[w] for w in adj[v] if w in colors})
            key = (-sat, -live_deg[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def backtrack(max_used: int) -> bool:
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise SearchBudgetExceeded(counter[0])
        v = choose()
        if v is None:
            return True
        banned = {colors[w] for w in adj[v] if w in colors}
        cap = min(k, max_used + 1)
        for c in range(1, cap + 1):
            if c in banned:
                continue
            colors[v] = c
            if backtrack(max(max_used, c)):
                return True
            del colors[v]
        return False

    return dict(colors) if backtrack(0) else None


def color_2distance(g: Graph, k: int, budget: int | None = None) -> Coloring | None:
    """A valid 2-distance coloring with at most k colors, or None if no
    such coloring exists.  Budget exhaustion raises SearchBudgetExceeded,
    distinctly from a proven None."""
    if k < 1:
        raise ValueError("palette size must be at least 1")
    adj = square_adjacency(g)
    core, peel_order = _peel(adj, set(g.vertices()), k)
    counter = [0]
    core_colors = _decide_k_colorable(adj, core, k, budget, counter)
    if core_colors is None:
        return None
    out = Coloring(k, core_colors)
    for v in reversed(peel_order):
        used = {out.get(w) for w in adj[v] if out.get(w) is not None}
        free = next(c for c in range(1, k + 1) if c not in used)
        out.set(v, free)
    return out


def _greedy_clique(adj: list[set[int]], seed: int) -> set[int]:
    clique = {seed}
    candidates = set(adj[seed])
    while candidates:
        v = max(candidates, key=lambda x: (len(adj[x] & candidates), -x))
        clique.add(v)
        candidates &= adj[v]
    return clique


def _greedy_square_coloring(adj: list[set[int]], n: int) -> dict[int, int]:
    """DSATUR greedy; an upper bound, not necessarily optimal."""
    colors: dict[int, int] = {}
    for _ in range(n):
        best, best_key = None, None
        for v in range(n):
            if v in colors:
                continue
            sat = len({colors[w] for w in adj[v] if w in colors})
            key = (-sat, -len(adj[v]), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        banned = {colors[w] for w in adj[best] if w in colors}
        colors[best] = next(c for c in range(1, n + 2) if c not in banned)
    return colors


def chi2_exact(g: Graph, budget: int | None = None):
    """Exact 2-distance chromatic number, or a proven (low, high) interval
    if the node budget runs out first.

    Lower bounds come from greedy cliques in the square (every closed
    neighborhood of g is one such clique); upper bounds from DSATUR greedy.
    The gap is closed by exact k-colorability decisions with peeling.
    """
    if g.n == 0:
        return 0
    adj = square_adjacency(g)
    greedy = _greedy_square_coloring(adj, g.n)
    high = max(greedy.values())
    seeds = sorted(range(g.n), key=lambda v: -len(adj[v]))[:8]
    low = max(1, max(len(_greedy_clique(adj, s)) for s in seeds))
    counter = [0]
    k = low
    while k < high:
        core, _ = _peel(adj, set(g.vertices()), k)
        try:
            found = _decide_k_colorable(adj, core, k, budget, counter)
        except SearchBudgetExceeded:
            return (k, high)
        if found is not None:
            return k
        k += 1
    return high


def hall_check(lists: Sequence[Iterable[int]]) -> bool:
    """Whether pairwise-conflicting vertices with these color lists can be
    simultaneously colored (system of distinct representatives)."""
    return has_distinct_representatives([tuple(l) for l in lists])


def list_extend(
    g: Graph,
    partial: Coloring,
    targets: Sequence[int],
    simultaneous: bool = False,
):
    """Extend a valid partial coloring onto ``targets``.

    Greedy mode colors the targets in the given order with the smallest
    available color.  Simultaneous mode solves the distinct-representatives
    matching over all targets at once (callers guarantee the targets are
    pairwise within distance 2).  Failure returns a falsy
    :class:`ExtendFailure` naming the blocking vertex.
    """
    for t in targets:
        if partial.get(t) is not None:
            raise ValueError(f"target {t} is already colored")
    work = partial.copy()
    if simultaneous:
        lists = [tuple(available_colors(g, work, t)) for t in targets]
        match = maximum_bipartite_matching(lists)
        if len(match) != len(targets):
            blocked = next(i for i in range(len(targets)) if i not in match)
            return ExtendFailure(targets[blocked], seen_colors(g, work, targets[blocked]), work.k)
        for i, t in enumerate(targets):
            work.set(t, match[i])
        return work
    for t in targets:
        avail = available_colors(g, work, t)
        if not avail:
            return ExtendFailure(t, seen_colors(g, work, t), work.k)
        work.set(t, avail[0])
    return work
