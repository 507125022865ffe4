"""Forbidden configurations, reduction surgeries, and constructive coloring.

Every detector names a local structure that admits a color-saving rewrite:
delete it (possibly splicing in a short replacement path whose safety is
certified by an exact potential bound), 8-color the smaller graph, then
extend the coloring back over the deleted vertices in an order that keeps
every step under 8 forbidden colors.  Chaining these rewrites yields an
exact 2-distance 8-coloring for graphs with density at most 18/7 and
maximum degree 7.

Vertex classification (small/medium/large 2-vertices, bridge pairs,
sponsor assignment) lives here too; the discharging engine consumes it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .coloring import (
    Coloring,
    available_colors,
    color_2distance,
    is_valid_2distance,
    seen_colors,
)
from .graph import (
    Graph,
    PathDescriptor,
    connected_components,
    d_star,
    degree_two_runs,
    remove_edges,
    remove_vertices,
    vertex_signature,
)
from .potential import (
    DENSITY_BOUND,
    DEFAULT_PARAMS,
    PotentialParams,
    add_path,
    mad_exact,
    rho_star,
)

PALETTE = 8
#: Color-budget anchor: a vertex can always be colored while it sees at
#: most PALETTE-1 distinct colors.
ANCHOR = PALETTE - 1
#: Below this |V|+|E| total the solver switches to exhaustive search.
BASE_THRESHOLD = 24

KINDS = (
    "DegreeOne",
    "CountingPair",
    "FourPlusPath",
    "ThreePathBadEnd",
    "TwoPathBadEnds",
    "TwoPathChord",
    "ThreePathCycle",
    "SmallVertex",
    "WeirdSeven",
    "WeirdSix",
    "SevenSevenTwoPaths",
    "TwoConsecutiveThreePaths",
    "ThreeConsecutiveThreePaths",
    "SponsorManyBridges",
    "SponsorAllBadNeighbors",
    "SponsorWithSmallX",
)


class DetectionRefused(Exception):
    """Input violates a precondition of detection/classification."""


class ForestOfStarsError(DetectionRefused):
    """The 3-paths do not form a forest of stars; carries the witness."""

    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


class InternalContradiction(Exception):
    """A guaranteed reduction branch was missing: detector gap or a false
    density precondition."""


class ExtensionError(Exception):
    """A proof-backed extension step ran out of colors (implementation bug);
    carries the blocking vertex and its constraint state."""

    def __init__(self, tag: str, vertex, state):
        super().__init__(f"extension {tag} blocked at {vertex}: {state}")
        self.tag = tag
        self.vertex = vertex
        self.state = state


@dataclass(frozen=True)
class Configuration:
    """A detected forbidden configuration with its witness data."""

    kind: str
    data: dict
    potentials: dict = field(default_factory=dict)

    def validate(self, g: Graph) -> None:
        """Recheck the witness against ``g`` from scratch."""
        _VALIDATORS[self.kind](g, self)


@dataclass
class Reduction:
    """The reduced graph plus everything needed to lift a coloring back."""

    graph: Graph
    g_to_h: dict[int, int]
    removed: tuple[int, ...]
    added: tuple[int, ...]
    tag: str
    recorded: dict
    detail: dict


# ---------------------------------------------------------------------------
# run bookkeeping


class _RunIndex:
    """Degree-2 runs of a graph, addressable by (anchor, first internal)."""

    def __init__(self, g: Graph):
        self.runs, self.cycles = degree_two_runs(g)
        self.from_edge: dict[tuple[int, int], tuple[tuple[int, ...], int]] = {}
        for r in self.runs:
            u, v = r.endpoints
            ints = r.internal
            self.from_edge[(u, ints[0])] = (ints, v)
            self.from_edge[(v, ints[-1])] = (tuple(reversed(ints)), u)

    def oriented(self, anchor: int, first: int) -> tuple[tuple[int, ...], int]:
        """Internals ordered away from ``anchor``, plus the far endpoint."""
        return self.from_edge[(anchor, first)]


def _slot_kinds(g: Graph, idx: _RunIndex, u: int):
    """Classify each edge at ``u``: (neighbor, run internals or None, far)."""
    out = []
    for w in g.adjacency[u]:
        if g.degree(w) == 2:
            ints, far = idx.oriented(u, w)
            out.append((w, ints, far))
        else:
            out.append((w, None, w))
    return out


# ---------------------------------------------------------------------------
# detectors (dispatch order matters: later recipes assume earlier detectors
# fire nowhere in the graph)


def _detect_degree_one(g: Graph, idx, ds) -> Configuration | None:
    for v in g.vertices():
        if g.degree(v) == 1:
            return Configuration("DegreeOne", {"v": v, "u": g.adjacency[v][0]})
    return None


def _detect_four_plus_path(g: Graph, idx: _RunIndex, ds) -> Configuration | None:
    for r in sorted(idx.runs, key=lambda r: (r.endpoints, r.internal)):
        if r.length >= 4:
            chain = (r.endpoints[0], *r.internal, r.endpoints[1])
            return Configuration("FourPlusPath", {"chain": chain[:6], "run": r})
    return None


def _detect_three_path_bad_end(g: Graph, idx: _RunIndex, ds) -> Configuration | None:
    for r in sorted(idx.runs, key=lambda r: (r.endpoints, r.internal)):
        if r.length != 3:
            continue
        u, v = r.endpoints
        if r.closed:
            return Configuration("ThreePathBadEnd", {"case": "closed", "run": r})
        if g.degree(u) < 7 or g.degree(v) < 7:
            low = min((g.degree(u), u), (g.degree(v), v))[1]
            return Configuration(
                "ThreePathBadEnd", {"case": "low-end", "run": r, "low": low}
            )
    return None


def _detect_two_path_bad_ends(g: Graph, idx: _RunIndex, ds) -> Configuration | None:
    for r in sorted(idx.runs, key=lambda r: (r.endpoints, r.internal)):
        if r.length != 2:
            continue
        u, v = r.endpoints
        if r.closed:
            return Configuration("TwoPathBadEnds", {"case": "closed", "run": r})
        lo, hi = sorted((g.degree(u), g.degree(v)))
        if lo <= ANCHOR - 2 and hi <= ANCHOR - 1:
            low = min((g.degree(u), u), (g.degree(v), v))[1]
            return Configuration(
                "TwoPathBadEnds", {"case": "low-ends", "run": r, "low": low}
            )
    return None


def _detect_two_path_chord(g: Graph, idx: _RunIndex, ds) -> Configuration | None:
    for r in sorted(idx.runs, key=lambda r: (r.endpoints, r.internal)):
        if r.length != 2 or r.closed:
            continue
        u, v = r.endpoints
        if not g.has_edge(u, v):
            continue
        for hi, lo in ((u, v), (v, u)):
            if g.degree(hi) == 7 and g.degree(lo) <= 6:
                return Configuration(
                    "TwoPathChord", {"run": r, "seven": hi, "other": lo}
                )
    return None


def _detect_three_path_cycle(g: Graph, idx: _RunIndex, ds) -> Configuration | None:
    """A cycle in the multigraph whose edges are the open 3-runs.

    Returns anchors (a_0..a_{m-1}) and runs (r_0..r_{m-1}) with r_i joining
    a_i to a_{i+1 mod m}.
    """
    runs3 = [r for r in idx.runs if r.length == 3 and not r.closed]
    adj: dict[int, list[tuple[int, int]]] = {}
    for i, r in enumerate(runs3):
        u, v = r.endpoints
        adj.setdefault(u, []).append((v, i))
        adj.setdefault(v, []).append((u, i))

    def chain_to_root(parent, x):
        out = [x]
        links = []
        while parent[x][0] != -1:
            links.append(parent[x][1])
            x = parent[x][0]
            out.append(x)
        return out, links

    visited: set[int] = set()
    for start in sorted(adj):
        if start in visited:
            continue
        parent: dict[int, tuple[int, int]] = {start: (-1, -1)}
        stack = [(start, -1)]
        while stack:
            x, via = stack.pop()
            for y, ridx in sorted(adj.get(x, ())):
                if ridx == via:
                    continue
                if y in parent:
                    vx, rx = chain_to_root(parent, x)
                    vy, ry = chain_to_root(parent, y)
                    pos = {v: i for i, v in enumerate(vx)}
                    j = next(i for i, v in enumerate(vy) if v in pos)
                    lca = vy[j]
                    # cycle: y -> ... -> lca -> ... -> x -> (ridx) -> y
                    anchors = list(reversed(vx[: pos[lca] + 1])) + vy[:j]
                    runs = list(reversed(rx[: pos[lca]])) + [ridx] + ry[:j]
                    return Configuration(
                        "ThreePathCycle",
                        {
                            "anchors": tuple(anchors),
                            "runs": tuple(runs3[i] for i in runs),
                        },
                    )
                parent[y] = (x, ridx)
                stack.append((y, ridx))
        visited.update(parent)
    return None


def _detect_small_vertex(g: Graph, idx: _RunIndex, ds) -> Configuration | None:
    for v in g.vertices():
        if not 3 <= g.degree(v) <= (ANCHOR + 1) // 2:
            continue
        if any(g.degree(w) != 2 for w in g.adjacency[v]):
            continue
        if ds[v] > ANCHOR + 1:
            continue
        for w in g.adjacency[v]:
            if ds[w] <= ANCHOR:
                a, b = g.adjacency[w]
                other = b if a == v else a
                if g.degree(other) == 2:
                    return Configuration("SmallVertex", {"v": v, "w": w})
    return None


def _detect_counting_pair(g: Graph, idx: _RunIndex, ds) -> Configuration | None:
    # components that are pure cycles of 2-vertices are a base case for
    # the solver, not a configuration
    skip = {v for cyc in idx.cycles for v in cyc}
    for w in g.vertices():
        if w in skip:
            continue
        nbrs = sorted(g.adjacency[w], key=lambda u: (ds[u], u))
        for k in range(1, len(nbrs) + 1):
            if ds[nbrs[k - 1]] > ANCHOR + k - 1:
                break
            if ds[w] <= ANCHOR + k:
                return Configuration(
                    "CountingPair", {"w": w, "removed_neighbors": tuple(nbrs[:k])}
                )
    return None


def _weird_seven_slots(g: Graph, idx: _RunIndex, u: int):
    """Partition the edges at a 7-vertex for the capped-2-path detectors."""
    low2, other = [], []
    for w, ints, far in _slot_kinds(g, idx, u):
        if ints is not None and len(ints) == 2 and far != u and g.degree(far) <= 5:
            low2.append((w, ints, far))
        else:
            other.append((w, ints, far))
    return low2, other


def _detect_weird_seven(g: Graph, idx: _RunIndex, ds) -> Configuration | None:
    for u in g.vertices():
        if g.degree(u) != 7:
            continue
        low2, other = _weird_seven_slots(g, idx, u)
        if len(low2) < 6:
            continue
        if len(low2) == 7:
            six, extra = low2[:6], low2[6]
            return Configuration(
                "WeirdSeven",
                {"u": u, "case": "two-path", "six": tuple(six), "extra": extra},
            )
        (w, ints, far) = other[0]
        if ints is not None and len(ints) == 3 and far != u:
            return Configuration(
                "WeirdSeven",
                {"u": u, "case": "three-path", "six": tuple(low2), "extra": other[0]},
            )
        if ints is not None and len(ints) == 2 and far != u and g.degree(far) <= 6:
            return Configuration(
                "WeirdSeven",
                {"u": u, "case": "two-path", "six": tuple(low2), "extra": other[0]},
            )
        if ints is None and vertex_signature(g, w).matches((2, 2, 0)):
            return Configuration(
                "WeirdSeven",
                {"u": u, "case": "deg-three", "six": tuple(low2), "extra": other[0]},
            )
    return None


def _detect_weird_six(g: Graph, idx: _RunIndex, ds) -> Configuration | None:
    for u in g.vertices():
        if g.degree(u) != 6:
            continue
        slots = _slot_kinds(g, idx, u)
        if all(
            ints is not None and len(ints) == 2 and far != u and g.degree(far) == 6
            for _, ints, far in slots
        ):
            return Configuration("WeirdSix", {"u": u, "paths": tuple(slots)})
    return None


def _open_three_runs_at(g: Graph, idx: _RunIndex, u: int):
    out = []
    for w, ints, far in _slot_kinds(g, idx, u):
        if ints is not None and len(ints) == 3 and far != u:
            out.append((ints, far))
    return out


def _potential_without(g: Graph, dropped, query, params) -> int:
    h, remap = remove_vertices(g, dropped)
    return rho_star(h, frozenset(remap[v] for v in query), params).value


def _detect_two_consecutive_three_paths(
    g: Graph, idx: _RunIndex, ds, params=DEFAULT_PARAMS
) -> Configuration | None:
    for v in g.vertices():
        if g.degree(v) < 3:
            continue
        runs_here = _open_three_runs_at(g, idx, v)
        if len(runs_here) < 2:
            continue
        for ai in range(len(runs_here)):
            for bi in range(ai + 1, len(runs_here)):
                ints_a, u = runs_here[ai]
                ints_b, w = runs_here[bi]
                if u == w:
                    continue  # a 2-cycle of 3-runs: earlier detector's job
                dropped = set(ints_a) | set(ints_b)
                value = _potential_without(g, dropped, {u, w}, params)
                if value >= 1:
                    return Configuration(
                        "TwoConsecutiveThreePaths",
                        {
                            "u": u,
                            "v": v,
                            "w": w,
                            "pu": tuple(reversed(ints_a)),
                            "pw": tuple(reversed(ints_b)),
                        },
                        {"bridge": value},
                    )
    return None


def _detect_three_consecutive_three_paths(
    g: Graph, idx: _RunIndex, ds
) -> Configuration | None:
    runs3 = [r for r in idx.runs if r.length == 3 and not r.closed]
    adj: dict[int, list[tuple[int, int]]] = {}
    for i, r in enumerate(runs3):
        u, v = r.endpoints
        adj.setdefault(u, []).append((v, i))
        adj.setdefault(v, []).append((u, i))
    for v in sorted(adj):
        for w, i2 in sorted(adj[v]):
            for u, i1 in sorted(adj[v]):
                if i1 == i2:
                    continue
                for x, i3 in sorted(adj.get(w, ())):
                    if i3 == i2:
                        continue
                    if len({u, v, w, x}) != 4:
                        continue
                    return Configuration(
                        "ThreeConsecutiveThreePaths",
                        {
                            "anchors": (u, v, w, x),
                            "runs": (runs3[i1], runs3[i2], runs3[i3]),
                        },
                    )
    return None


def _oriented_from(run: PathDescriptor, anchor: int) -> tuple[int, ...]:
    if run.endpoints[0] == anchor:
        return run.internal
    return tuple(reversed(run.internal))


def _detect_seven_seven(
    g: Graph, idx: _RunIndex, ds, params=DEFAULT_PARAMS
) -> Configuration | None:
    for u in g.vertices():
        if g.degree(u) != 7:
            continue
        slots = _slot_kinds(g, idx, u)
        if not all(
            ints is not None and len(ints) == 2 and far != u for _, ints, far in slots
        ):
            continue
        low = [s for s in slots if g.degree(s[2]) <= 5]
        high = [s for s in slots if g.degree(s[2]) == 7]
        if len(low) != 6 or len(high) != 1:
            continue
        _, p_ints, v = high[0]
        pot_u = _potential_without(g, set(p_ints), {u}, params)
        pot_v = _potential_without(g, set(p_ints), {v}, params)
        if pot_u > pot_v:
            continue
        return Configuration(
            "SevenSevenTwoPaths",
            {"u": u, "v": v, "p": p_ints, "six": tuple(low)},
            {"center": pot_u, "far": pot_v},
        )
    return None


def _sponsor_oriented(g: Graph, idx: _RunIndex, u: int, params):
    """The unique open 3-run at ``u`` when the potential orientation makes
    ``u`` the constrained endpoint; None otherwise."""
    runs_here = _open_three_runs_at(g, idx, u)
    if len(runs_here) != 1:
        return None
    ints, v = runs_here[0]
    pot_u = _potential_without(g, set(ints), {u}, params)
    pot_v = _potential_without(g, set(ints), {v}, params)
    if pot_u > pot_v:
        return None
    return ints, v, pot_u, pot_v


def _detect_sponsor_many_bridges(
    g: Graph, idx: _RunIndex, ds, params=DEFAULT_PARAMS
) -> Configuration | None:
    for u in g.vertices():
        if g.degree(u) != 7:
            continue
        oriented = _sponsor_oriented(g, idx, u, params)
        if oriented is None:
            continue
        ints, v, pot_u, pot_v = oriented
        low2 = [
            s
            for s in _slot_kinds(g, idx, u)
            if s[1] is not None and len(s[1]) == 2 and s[2] != u and g.degree(s[2]) <= 5
        ]
        if len(low2) >= 3:
            return Configuration(
                "SponsorManyBridges",
                {"u": u, "v": v, "p": ints, "qpaths": tuple(low2[:3])},
                {"center": pot_u, "far": pot_v},
            )
    return None


def _sponsor_neighbor_split(g: Graph, idx: _RunIndex, u: int, p_first: int):
    """Split the non-3-path edges at ``u`` into 2-runs, capped (2,2,0)
    neighbors, and everything else."""
    qpaths, wvertices, rest = [], [], []
    for w, ints, far in _slot_kinds(g, idx, u):
        if w == p_first:
            continue
        if ints is not None and len(ints) == 2 and far != u:
            qpaths.append((w, ints, far))
        elif ints is None and vertex_signature(g, w).matches((2, 2, 0)):
            wvertices.append(w)
        else:
            rest.append(w)
    return qpaths, wvertices, rest


def _detect_sponsor_all_bad(
    g: Graph, idx: _RunIndex, ds, params=DEFAULT_PARAMS
) -> Configuration | None:
    for u in g.vertices():
        if g.degree(u) != 7:
            continue
        oriented = _sponsor_oriented(g, idx, u, params)
        if oriented is None:
            continue
        ints, v, pot_u, pot_v = oriented
        qpaths, wvertices, rest = _sponsor_neighbor_split(g, idx, u, ints[0])
        if rest:
            continue
        return Configuration(
            "SponsorAllBadNeighbors",
            {
                "u": u,
                "v": v,
                "p": ints,
                "qpaths": tuple(qpaths),
                "wvertices": tuple(wvertices),
            },
            {"center": pot_u, "far": pot_v},
        )
    return None


def _detect_sponsor_small_x(
    g: Graph, idx: _RunIndex, ds, params=DEFAULT_PARAMS
) -> Configuration | None:
    for u in g.vertices():
        if g.degree(u) != 7:
            continue
        oriented = _sponsor_oriented(g, idx, u, params)
        if oriented is None:
            continue
        ints, v, pot_u, pot_v = oriented
        qpaths, wvertices, rest = _sponsor_neighbor_split(g, idx, u, ints[0])
        if len(rest) != 1 or ds[rest[0]] > 12:
            continue
        low = [q for q in qpaths if g.degree(q[2]) <= 5]
        if not low:
            continue
        # the capped 2-run with a small far end plays the first slot
        first = low[0]
        ordered = (first,) + tuple(q for q in qpaths if q != first)
        return Configuration(
            "SponsorWithSmallX",
            {
                "u": u,
                "v": v,
                "p": ints,
                "qpaths": ordered,
                "wvertices": tuple(wvertices),
                "x": rest[0],
            },
            {"center": pot_u, "far": pot_v, "x_reach": ds[rest[0]]},
        )
    return None


_DETECTORS: tuple[tuple[str, Callable], ...] = (
    ("DegreeOne", _detect_degree_one),
    ("FourPlusPath", _detect_four_plus_path),
    ("ThreePathBadEnd", _detect_three_path_bad_end),
    ("TwoPathBadEnds", _detect_two_path_bad_ends),
    ("TwoPathChord", _detect_two_path_chord),
    ("ThreePathCycle", _detect_three_path_cycle),
    ("SmallVertex", _detect_small_vertex),
    ("CountingPair", _detect_counting_pair),
    ("WeirdSeven", _detect_weird_seven),
    ("WeirdSix", _detect_weird_six),
    ("TwoConsecutiveThreePaths", _detect_two_consecutive_three_paths),
    ("ThreeConsecutiveThreePaths", _detect_three_consecutive_three_paths),
    ("SevenSevenTwoPaths", _detect_seven_seven),
    ("SponsorManyBridges", _detect_sponsor_many_bridges),
    ("SponsorAllBadNeighbors", _detect_sponsor_all_bad),
    ("SponsorWithSmallX", _detect_sponsor_small_x),
)


def detect_configuration(
    g: Graph, params: PotentialParams = DEFAULT_PARAMS
) -> Configuration | None:
    """First firing configuration in dispatch order, or None.

    Cheap structural detectors run before the potential-backed ones, so a
    later detector may assume no earlier one fires anywhere in the graph.
    """
    if not params.is_default:
        raise DetectionRefused("configuration detectors require coefficients (9, 7)")
    idx = _RunIndex(g)
    ds = [d_star(g, v) for v in g.vertices()]
    for _, detector in _DETECTORS:
        cfg = detector(g, idx, ds)
        if cfg is not None:
            return cfg
    return None


# ---------------------------------------------------------------------------
# reduction surgeries

from .matching import maximum_bipartite_matching  # noqa: E402


class ConstructiveFailure(Exception):
    """The exhaustive fallback could not produce an 8-coloring."""


def _edge_removal(g: Graph, edges, tag: str, detail: dict) -> Reduction:
    h = remove_edges(g, edges)
    return Reduction(
        h, {v: v for v in g.vertices()}, (), (), tag, {"removed_edges": tuple(edges)}, detail
    )


def _vertex_removal(g: Graph, dropped, tag: str, detail: dict) -> Reduction:
    h, remap = remove_vertices(g, dropped)
    return Reduction(h, remap, tuple(sorted(dropped)), (), tag, {}, detail)


def _surgery(
    g: Graph,
    dropped,
    paths: list[tuple[int, int, int]],
    tag: str,
    detail: dict,
    params: PotentialParams,
) -> Reduction:
    """Remove ``dropped`` and splice in the given (u, v, k) paths in order.

    Each splice requires the current graph's potential of {u, v} to reach
    7-2k (re-verified here); a k=0 splice whose edge already exists is
    skipped, since the adjacency already enforces the constraint the edge
    would add.
    """
    h, remap = remove_vertices(g, dropped)
    recorded: dict = {"splices": []}
    cur = h
    added: list[int] = []
    for gu, gv, k in paths:
        u, v = remap[gu], remap[gv]
        if k == 0 and cur.has_edge(u, v):
            recorded["splices"].append({"k": 0, "pre_existing": True})
            continue
        need = 7 - 2 * k
        have = rho_star(cur, {u, v}, params).value
        if have < need:
            raise InternalContradiction(
                f"{tag}: potential {have} below required {need} for a k={k} splice"
            )
        recorded["splices"].append({"k": k, "need": need, "have": have})
        base = cur.n
        cur = add_path(cur, u, v, k)
        added.extend(range(base, base + k))
    return Reduction(
        cur, remap, tuple(sorted(dropped)), tuple(added), tag, recorded, detail
    )


def _apply_degree_one(g, cfg, params):
    v, u = cfg.data["v"], cfg.data["u"]
    return _edge_removal(g, [(v, u)], "greedy", {"order": (v,)})


def _apply_four_plus_path(g, cfg, params):
    chain = cfg.data["chain"]
    return _edge_removal(
        g, [(chain[2], chain[3])], "greedy", {"order": (chain[3], chain[2])}
    )


def _apply_three_path_bad_end(g, cfg, params):
    r: PathDescriptor = cfg.data["run"]
    if cfg.data["case"] == "closed":
        i0, i1, i2 = r.internal
        return _vertex_removal(
            g, set(r.internal), "greedy", {"order": (i0, i2, i1)}
        )
    low = cfg.data["low"]
    ints = _oriented_from(r, low)
    return _edge_removal(
        g, [(ints[0], ints[1])], "greedy", {"order": (ints[0], ints[1])}
    )


def _apply_two_path_bad_ends(g, cfg, params):
    r: PathDescriptor = cfg.data["run"]
    if cfg.data["case"] == "closed":
        return _vertex_removal(g, set(r.internal), "greedy", {"order": r.internal})
    low = cfg.data["low"]
    ints = _oriented_from(r, low)
    # keep-first vertex is the internal far from the low-degree endpoint
    return _edge_removal(
        g, [(ints[0], ints[1])], "greedy", {"order": (ints[1], ints[0])}
    )


def _apply_two_path_chord(g, cfg, params):
    r: PathDescriptor = cfg.data["run"]
    ints = _oriented_from(r, cfg.data["seven"])
    return _vertex_removal(g, set(r.internal), "greedy", {"order": ints})


def _apply_small_vertex(g, cfg, params):
    v, w = cfg.data["v"], cfg.data["w"]
    return _edge_removal(g, [(v, w)], "greedy", {"order": (v, w)})


def _apply_counting_pair(g, cfg, params):
    w = cfg.data["w"]
    removed = cfg.data["removed_neighbors"]
    order = (w,) + tuple(reversed(removed))
    return _edge_removal(g, [(w, u) for u in removed], "greedy", {"order": order})


def _apply_three_path_cycle(g, cfg, params):
    anchors = cfg.data["anchors"]
    runs = cfg.data["runs"]
    dropped = set()
    triples = []
    for a, r in zip(anchors, runs):
        ints = _oriented_from(r, a)
        triples.append(ints)
        dropped.update(ints)
    return _vertex_removal(
        g, dropped, "cycle-threepaths", {"anchors": anchors, "triples": tuple(triples)}
    )


def _apply_weird_seven(g, cfg, params):
    u = cfg.data["u"]
    six = cfg.data["six"]
    case = cfg.data["case"]
    dropped = {u}
    for a, ints, c in six:
        dropped.update(ints)
    detail = {"u": u, "six": six, "case": case}
    w, ints, far = cfg.data["extra"]
    if case == "three-path":
        dropped.update(ints[:2])
        detail["extra"] = (ints[0], ints[1], far)
    elif case == "two-path":
        dropped.update(ints)
        detail["extra"] = (ints[0], ints[1], far)
    else:  # deg-three neighbor with two capped runs
        y = w
        runs_at_y = []
        idx = _RunIndex(g)
        for yn in g.adjacency[y]:
            if g.degree(yn) == 2:
                yints, yfar = idx.oriented(y, yn)
                runs_at_y.append(yints[0])
        dropped.add(y)
        dropped.update(runs_at_y)
        detail["extra"] = (y, runs_at_y[0], runs_at_y[1])
    return _vertex_removal(g, dropped, "weird-seven", detail)


def _apply_weird_six(g, cfg, params):
    u = cfg.data["u"]
    paths = cfg.data["paths"]
    dropped = {u}
    for _, ints, _ in paths:
        dropped.update(ints)
    triples = tuple((ints[0], ints[1], far) for _, ints, far in paths)
    return _vertex_removal(g, dropped, "weird-six", {"u": u, "paths": triples})


def _apply_two_consecutive(g, cfg, params):
    u, v, w = cfg.data["u"], cfg.data["v"], cfg.data["w"]
    pu, pw = cfg.data["pu"], cfg.data["pw"]
    dropped = set(pu) | set(pw)
    detail = {"u": u, "v": v, "w": w, "pu": pu, "pw": pw}
    return _surgery(g, dropped, [(u, w, 3)], "two-consecutive", detail, params)


def _apply_three_consecutive(g, cfg, params):
    a, b, c, d = cfg.data["anchors"]
    r1, r2, r3 = cfg.data["runs"]
    for (u, v, w), (ru, rw) in (((a, b, c), (r1, r2)), ((b, c, d), (r2, r3))):
        dropped = set(ru.internal) | set(rw.internal)
        value = _potential_without(g, dropped, {u, w}, params)
        if value >= 1:
            sub = Configuration(
                "TwoConsecutiveThreePaths",
                {
                    "u": u,
                    "v": v,
                    "w": w,
                    "pu": _oriented_from(ru, u),
                    "pw": _oriented_from(rw, w),
                },
                {"bridge": value},
            )
            return _apply_two_consecutive(g, sub, params)
    raise InternalContradiction(
        "both bridge splices unavailable on three consecutive 3-paths"
    )


def _apply_seven_seven(g, cfg, params):
    u, v = cfg.data["u"], cfg.data["v"]
    p = cfg.data["p"]
    six = cfg.data["six"]
    dropped = set(p)
    for _, ints, _ in six:
        dropped.update(ints)
    h0, remap = remove_vertices(g, dropped)
    chosen = None
    for pos, (_, _, far) in enumerate(six):
        if far == v:
            continue
        value = rho_star(h0, {remap[v], remap[far]}, params).value
        if value >= 3:
            chosen = pos
            break
    if chosen is None:
        raise InternalContradiction("no splice endpoint for the capped 7-vertex")
    far = six[chosen][2]
    detail = {
        "u": u,
        "v": v,
        "p": p,
        "six": tuple((ints[0], ints[1], f) for _, ints, f in six),
        "chosen": chosen,
    }
    return _surgery(g, dropped, [(v, far, 2)], "seven-seven", detail, params)


def _apply_sponsor_bridges(g, cfg, params):
    u, v = cfg.data["u"], cfg.data["v"]
    p = cfg.data["p"]
    qpaths = cfg.data["qpaths"]
    dropped = set(p)
    for _, ints, _ in qpaths:
        dropped.update(ints)
    h0, remap = remove_vertices(g, dropped)
    triples = tuple((ints[0], ints[1], far) for _, ints, far in qpaths)
    detail = {"u": u, "v": v, "p": p, "q": triples}
    for pos, (_, _, far) in enumerate(qpaths):
        if far == v:
            continue
        if rho_star(h0, {remap[v], remap[far]}, params).value >= 3:
            detail["chosen"] = pos
            return _surgery(
                g, dropped, [(v, far, 2)], "sponsor-bridges-a", detail, params
            )
    if g.has_edge(u, v) or rho_star(h0, {remap[u], remap[v]}, params).value >= 7:
        return _surgery(g, dropped, [(u, v, 0)], "sponsor-bridges-b", detail, params)
    raise InternalContradiction("no splice available at the bridged sponsor")


def _w_triples(g: Graph, idx: _RunIndex, wvertices):
    """(w, first internals of its two capped runs) per capped 3-vertex."""
    out = []
    for w in wvertices:
        starts = [n for n in g.adjacency[w] if g.degree(n) == 2]
        out.append((w, starts[0], starts[1]))
    return out


def _apply_sponsor_all_bad(g, cfg, params):
    u, v = cfg.data["u"], cfg.data["v"]
    p = cfg.data["p"]
    qpaths = cfg.data["qpaths"]
    ws = cfg.data["wvertices"]
    k, l = len(qpaths), len(ws)
    idx = _RunIndex(g)
    wtriples = _w_triples(g, idx, ws)
    qtriples = tuple((ints[0], ints[1], far) for _, ints, far in qpaths)
    detail = {"u": u, "v": v, "p": p, "q": qtriples, "w": tuple(wtriples)}

    if k == 0:
        dropped = {u, p[0], p[1]}
        for w, r1, s1 in wtriples:
            dropped.update((w, r1, s1))
        return _vertex_removal(g, dropped, "sponsor-allbad-k0", detail)

    if k == 1:
        dropped = {u, *p, qtriples[0][0], qtriples[0][1]}
        for w, r1, s1 in wtriples:
            dropped.update((w, r1, s1))
        return _surgery(
            g, dropped, [(v, qtriples[0][2], 3)], "sponsor-allbad-k1", detail, params
        )

    dropped = {u, *p}
    for q1, q2, _ in qtriples:
        dropped.update((q1, q2))
    h0, remap = remove_vertices(g, dropped)
    far = [t[2] for t in qtriples]

    def pot(graph, a, b, extra_map=None):
        mapping = extra_map or remap
        return rho_star(graph, {mapping[a], mapping[b]}, params).value

    def with_splice(a, b, kk):
        if kk == 0 and h0.has_edge(remap[a], remap[b]):
            return h0
        return add_path(h0, remap[a], remap[b], kk)

    def second_ok(h1, a, b, need):
        if a == b:
            return False
        if h1.has_edge(remap[a], remap[b]) and need == 7:
            return True
        return rho_star(h1, {remap[a], remap[b]}, params).value >= need

    # template: two capped-path far ends splice plus a direct edge to a w
    if l >= 1:
        for i in range(k):
            for ip in range(i + 1, k):
                if far[i] == far[ip] or far[i] == v or far[ip] == v:
                    continue
                if pot(h0, far[i], far[ip]) >= 3:
                    h1 = with_splice(far[i], far[ip], 2)
                    for j, w in enumerate(ws):
                        if second_ok(h1, v, w, 7):
                            detail2 = dict(detail, i=i, ip=ip, j=j)
                            return _surgery(
                                g,
                                dropped,
                                [(far[i], far[ip], 2), (v, w, 0)],
                                "sponsor-allbad-claim2",
                                detail2,
                                params,
                            )
    # template: two direct edges into distinct w's
    if l >= 2:
        for jp, wjp in enumerate(ws):
            if not (
                h0.has_edge(remap[v], remap[wjp]) or pot(h0, v, wjp) >= 7
            ):
                continue
            h1 = with_splice(v, wjp, 0)
            for i in range(k):
                for j, wj in enumerate(ws):
                    if j == jp or far[i] == wj:
                        continue
                    if second_ok(h1, far[i], wj, 7):
                        detail2 = dict(detail, i=i, j=j, jp=jp)
                        return _surgery(
                            g,
                            dropped,
                            [(v, wjp, 0), (far[i], wj, 0)],
                            "sponsor-allbad-claim3",
                            detail2,
                            params,
                        )
    # template: two capped-path splices
    if k >= 3:
        for i in range(k):
            for ip in range(i + 1, k):
                if far[i] == far[ip]:
                    continue
                if pot(h0, far[i], far[ip]) >= 3:
                    h1 = with_splice(far[i], far[ip], 2)
                    for ipp in range(k):
                        if ipp in (i, ip) or far[ipp] == v:
                            continue
                        if rho_star(
                            h1, {remap[v], remap[far[ipp]]}, params
                        ).value >= 3:
                            detail2 = dict(detail, i=i, ip=ip, ipp=ipp)
                            return _surgery(
                                g,
                                dropped,
                                [(far[i], far[ip], 2), (v, far[ipp], 2)],
                                "sponsor-allbad-claim4",
                                detail2,
                                params,
                            )
    # template: one capped-path splice at v plus a far-to-w edge
    if l >= 1:
        for ip in range(k):
            if far[ip] == v:
                continue
            if pot(h0, v, far[ip]) >= 3:
                h1 = with_splice(v, far[ip], 2)
                for i in range(k):
                    if i == ip:
                        continue
                    for j, wj in enumerate(ws):
                        if far[i] == wj:
                            continue
                        if second_ok(h1, far[i], wj, 7):
                            detail2 = dict(detail, i=i, ip=ip, j=j)
                            return _surgery(
                                g,
                                dropped,
                                [(v, far[ip], 2), (far[i], wj, 0)],
                                "sponsor-allbad-claim5",
                                detail2,
                                params,
                            )
    raise InternalContradiction("no splice template fits the saturated sponsor")


def _apply_sponsor_small_x(g, cfg, params):
    u, v, x = cfg.data["u"], cfg.data["v"], cfg.data["x"]
    p = cfg.data["p"]
    qpaths = cfg.data["qpaths"]
    ws = cfg.data["wvertices"]
    idx = _RunIndex(g)
    wtriples = _w_triples(g, idx, ws)
    qtriples = tuple((ints[0], ints[1], far) for _, ints, far in qpaths)
    dropped = {u, *p}
    for q1, q2, _ in qtriples:
        dropped.update((q1, q2))
    h0, remap = remove_vertices(g, dropped)
    detail = {"u": u, "v": v, "x": x, "p": p, "q": qtriples, "w": tuple(wtriples)}
    for pos, (_, _, far) in enumerate(qtriples):
        if far == v:
            continue
        if rho_star(h0, {remap[v], remap[far]}, params).value >= 3:
            detail2 = dict(detail, chosen=pos)
            return _surgery(
                g, dropped, [(v, far, 2)], "sponsor-smallx-a", detail2, params
            )
    for z in sorted(set(ws) | {x}):
        if z == v:
            continue
        if h0.has_edge(remap[v], remap[z]) or rho_star(
            h0, {remap[v], remap[z]}, params
        ).value >= 7:
            detail2 = dict(detail, z=z)
            return _surgery(
                g, dropped, [(v, z, 0)], "sponsor-smallx-b", detail2, params
            )
    raise InternalContradiction("no splice available at the small-reach sponsor")


_APPLIERS: dict[str, Callable] = {
    "DegreeOne": _apply_degree_one,
    "FourPlusPath": _apply_four_plus_path,
    "ThreePathBadEnd": _apply_three_path_bad_end,
    "TwoPathBadEnds": _apply_two_path_bad_ends,
    "TwoPathChord": _apply_two_path_chord,
    "ThreePathCycle": _apply_three_path_cycle,
    "SmallVertex": _apply_small_vertex,
    "CountingPair": _apply_counting_pair,
    "WeirdSeven": _apply_weird_seven,
    "WeirdSix": _apply_weird_six,
    "TwoConsecutiveThreePaths": _apply_two_consecutive,
    "ThreeConsecutiveThreePaths": _apply_three_consecutive,
    "SevenSevenTwoPaths": _apply_seven_seven,
    "SponsorManyBridges": _apply_sponsor_bridges,
    "SponsorAllBadNeighbors": _apply_sponsor_all_bad,
    "SponsorWithSmallX": _apply_sponsor_small_x,
}


def apply_reduction(
    g: Graph, cfg: Configuration, params: PotentialParams = DEFAULT_PARAMS
) -> Reduction:
    """Perform the configuration's surgery; the result is strictly smaller
    and any spliced path's density precondition is re-verified, followed by
    an independent exact density check of the reduced graph."""
    if not params.is_default:
        raise DetectionRefused("reductions require coefficients (9, 7)")
    cfg.validate(g)
    red = _APPLIERS[cfg.kind](g, cfg, params)
    if red.graph.n + red.graph.m >= g.n + g.m:
        raise AssertionError(f"{cfg.kind}: reduction failed to shrink the graph")
    if red.recorded.get("splices"):
        value, _ = mad_exact(red.graph)
        if value > DENSITY_BOUND:
            raise InternalContradiction(
                f"{cfg.kind}: spliced graph exceeds density 18/7 ({value})"
            )
        red.recorded["density_after"] = str(value)
    return red


# ---------------------------------------------------------------------------
# coloring extensions


def _lift(red: Reduction, ch: Coloring) -> Coloring:
    phi = Coloring(PALETTE)
    for v, h in red.g_to_h.items():
        phi.set(v, ch.get(h))
    return phi


def _added_color(red: Reduction, ch: Coloring, pos: int) -> int:
    return ch.get(red.added[pos])


def _greedy_seq(g: Graph, phi: Coloring, order, tag: str) -> None:
    for v in order:
        avail = available_colors(g, phi, v)
        if not avail:
            raise ExtensionError(tag, v, seen_colors(g, phi, v))
        phi.set(v, avail[0])


def _sdr_seq(g: Graph, phi: Coloring, targets, tag: str) -> None:
    targets = list(targets)
    lists = [tuple(available_colors(g, phi, t)) for t in targets]
    match = maximum_bipartite_matching(lists)
    if len(match) != len(targets):
        blocked = next(t for i, t in enumerate(targets) if i not in match)
        raise ExtensionError(tag, blocked, dict(zip(targets, lists)))
    for i, t in enumerate(targets):
        phi.set(t, match[i])


def _extend_greedy(g, cfg, red, ch, phi):
    order = red.detail["order"]
    for v in order:
        phi.unset(v)
    _greedy_seq(g, phi, order, red.tag)


def _list_color_cycle(lists: list[list[int]]) -> list[int] | None:
    """Proper coloring of a cycle from per-vertex lists, or None.

    Always succeeds on even cycles whose lists all have size >= 2.
    """
    m = len(lists)
    for c0 in lists[0]:
        reach: list[set[int]] = [set() for _ in range(m)]
        reach[0] = {c0}
        for i in range(1, m):
            allowed = set(lists[i])
            if i == m - 1:
                allowed.discard(c0)
            prev = reach[i - 1]
            if not prev:
                break
            # a color is reachable unless the sole predecessor equals it
            reach[i] = allowed - {next(iter(prev))} if len(prev) == 1 else allowed
        if m >= 2 and not reach[m - 1]:
            continue
        out: list[int | None] = [None] * m
        out[0] = c0
        out[m - 1] = min(reach[m - 1])
        feasible = True
        for i in range(m - 2, 0, -1):
            options = [c for c in reach[i] if c != out[i + 1]]
            if not options:
                feasible = False
                break
            out[i] = min(options)
        if feasible:
            return out  # type: ignore[return-value]
    return None


def _extend_cycle_threepaths(g, cfg, red, ch, phi):
    triples = red.detail["triples"]
    ring: list[int] = []
    for x, y, z in triples:
        ring.extend((x, z))
    lists = [available_colors(g, phi, v) for v in ring]
    if any(len(l) < 2 for l in lists):
        bad = ring[next(i for i, l in enumerate(lists) if len(l) < 2)]
        raise ExtensionError(red.tag, bad, seen_colors(g, phi, bad))
    chosen = _list_color_cycle(lists)
    if chosen is None:
        raise ExtensionError(red.tag, ring[0], dict(zip(ring, lists)))
    for v, c in zip(ring, chosen):
        phi.set(v, c)
    _greedy_seq(g, phi, [y for _, y, _ in triples], red.tag)


def _extend_weird_seven(g, cfg, red, ch, phi):
    d = red.detail
    u = d["u"]
    firsts = [slot[1][0] for slot in d["six"]]
    seconds = [slot[1][1] for slot in d["six"]]
    case = d["case"]
    if case == "three-path":
        x1, x2, _far = d["extra"]
        _greedy_seq(g, phi, [x1], red.tag)
        _greedy_seq(g, phi, sorted(firsts) + [u] + sorted(seconds), red.tag)
        _greedy_seq(g, phi, [x2], red.tag)
    elif case == "deg-three":
        y, r1, s1 = d["extra"]
        _greedy_seq(g, phi, [y] + sorted(firsts) + [u] + sorted(seconds), red.tag)
        _greedy_seq(g, phi, [r1, s1], red.tag)
    else:
        t1, t2, z = d["extra"]
        # copy a color from beyond z so the final vertex sees a repeat
        nearby = sorted(
            phi.get(zz) for zz in g.adjacency[z] if zz != t2 and phi.get(zz) is not None
        )
        usable = [c for c in nearby if c != phi.get(z)]
        if usable:
            phi.set(t1, usable[0])
        else:
            _greedy_seq(g, phi, [t1], red.tag)
        _greedy_seq(g, phi, sorted(firsts) + [u] + sorted(seconds) + [t2], red.tag)


def _extend_weird_six(g, cfg, red, ch, phi):
    paths = red.detail["paths"]
    u = red.detail["u"]
    (p1_1, p2_1, _v1), (p1_2, _p2_2, _v2) = paths[0], paths[1]
    l_deep = available_colors(g, phi, p2_1)
    l_near = available_colors(g, phi, p1_2)
    common = sorted(set(l_deep) & set(l_near))
    if not common:
        raise ExtensionError(red.tag, p2_1, {"deep": l_deep, "near": l_near})
    phi.set(p2_1, common[0])
    phi.set(p1_2, common[0])
    _greedy_seq(g, phi, [p2 for _, p2, _ in paths[1:]], red.tag)
    _greedy_seq(g, phi, [u], red.tag)
    _greedy_seq(g, phi, [p1 for p1, _, _ in paths[2:]], red.tag)
    _greedy_seq(g, phi, [p1_1], red.tag)


def _extend_two_consecutive(g, cfg, red, ch, phi):
    d = red.detail
    pu, pw = d["pu"], d["pw"]
    phi.set(pu[0], _added_color(red, ch, 0))
    phi.set(pw[0], _added_color(red, ch, 2))
    _sdr_seq(g, phi, [pu[2], pw[2]], red.tag)
    _greedy_seq(g, phi, [pu[1], pw[1]], red.tag)


def _extend_seven_seven(g, cfg, red, ch, phi):
    d = red.detail
    u, p, six = d["u"], d["p"], d["six"]
    phi.unset(u)
    phi.set(p[1], _added_color(red, ch, 0))
    _sdr_seq(g, phi, [p[0], u] + [q1 for q1, _, _ in six], red.tag)
    _greedy_seq(g, phi, [q2 for _, q2, _ in six], red.tag)


def _extend_sponsor_bridges_a(g, cfg, red, ch, phi):
    d = red.detail
    p, q = d["p"], d["q"]
    phi.set(p[2], _added_color(red, ch, 0))
    _sdr_seq(g, phi, [p[0]] + [q1 for q1, _, _ in q], red.tag)
    _greedy_seq(g, phi, [p[1]] + [q2 for _, q2, _ in q], red.tag)


def _extend_sponsor_bridges_b(g, cfg, red, ch, phi):
    d = red.detail
    u, p, q = d["u"], d["p"], d["q"]
    phi.set(p[2], phi.get(u))
    _greedy_seq(g, phi, [q1 for q1, _, _ in q], red.tag)
    _greedy_seq(g, phi, [p[0], p[1]] + [q2 for _, q2, _ in q], red.tag)


def _sponsor_tail(g, red, phi, p, q_last, wtriples):
    order = [p[1]]
    order.extend(q_last)
    for _, r1, s1 in wtriples:
        order.extend((r1, s1))
    _greedy_seq(g, phi, order, red.tag)


def _extend_sponsor_allbad_k0(g, cfg, red, ch, phi):
    d = red.detail
    u, p, wtriples = d["u"], d["p"], d["w"]
    _greedy_seq(g, phi, [w for w, _, _ in wtriples], red.tag)
    _greedy_seq(g, phi, [p[0], u], red.tag)
    _sponsor_tail(g, red, phi, p, [], wtriples)


def _extend_sponsor_allbad_k1(g, cfg, red, ch, phi):
    d = red.detail
    u, p, q, wtriples = d["u"], d["p"], d["q"], d["w"]
    phi.set(p[2], _added_color(red, ch, 0))
    phi.set(q[0][1], _added_color(red, ch, 2))
    _greedy_seq(g, phi, [w for w, _, _ in wtriples] + [q[0][0]], red.tag)
    _sdr_seq(g, phi, [u, p[0]], red.tag)
    _sponsor_tail(g, red, phi, p, [], wtriples)


def _unset_sponsor_locals(phi, wtriples, extra=()):
    for w, r1, s1 in wtriples:
        phi.unset(w)
        phi.unset(r1)
        phi.unset(s1)
    for v in extra:
        phi.unset(v)


def _extend_sponsor_allbad_claim2(g, cfg, red, ch, phi):
    d = red.detail
    u, p, q, wt = d["u"], d["p"], d["q"], d["w"]
    i, ip, j = d["i"], d["ip"], d["j"]
    wj = wt[j][0]
    keep_wj = phi.get(wj)
    _unset_sponsor_locals(phi, wt)
    phi.set(wj, keep_wj)
    phi.set(p[2], keep_wj)
    phi.set(q[i][1], _added_color(red, ch, 0))
    phi.set(q[ip][1], _added_color(red, ch, 1))
    _greedy_seq(g, phi, [q[t][1] for t in range(len(q)) if t not in (i, ip)], red.tag)
    _greedy_seq(g, phi, [u], red.tag)
    mids = [wt[t][0] for t in range(len(wt)) if t != j]
    mids += [q[t][0] for t in range(len(q)) if t not in (i, ip)]
    _greedy_seq(g, phi, sorted(mids), red.tag)
    _sdr_seq(g, phi, [q[i][0], q[ip][0]], red.tag)
    _greedy_seq(g, phi, [p[0]], red.tag)
    _sponsor_tail(g, red, phi, p, [], wt)


def _extend_sponsor_allbad_claim3(g, cfg, red, ch, phi):
    d = red.detail
    u, p, q, wt = d["u"], d["p"], d["q"], d["w"]
    i, j, jp = d["i"], d["j"], d["jp"]
    wj, wjp = wt[j][0], wt[jp][0]
    keep_wj, keep_wjp = phi.get(wj), phi.get(wjp)
    _unset_sponsor_locals(phi, wt)
    phi.set(wj, keep_wj)
    phi.set(wjp, keep_wjp)
    phi.set(p[2], keep_wjp)
    phi.set(q[i][1], keep_wj)
    _greedy_seq(g, phi, [q[t][1] for t in range(len(q)) if t != i], red.tag)
    _greedy_seq(g, phi, [u], red.tag)
    mids = [wt[t][0] for t in range(len(wt)) if t not in (j, jp)]
    mids += [q[t][0] for t in range(len(q)) if t != i]
    _greedy_seq(g, phi, sorted(mids), red.tag)
    _greedy_seq(g, phi, [q[i][0], p[0]], red.tag)
    _sponsor_tail(g, red, phi, p, [], wt)


def _extend_sponsor_allbad_claim4(g, cfg, red, ch, phi):
    d = red.detail
    u, p, q, wt = d["u"], d["p"], d["q"], d["w"]
    i, ip, ipp = d["i"], d["ip"], d["ipp"]
    _unset_sponsor_locals(phi, wt)
    phi.set(p[2], _added_color(red, ch, 2))
    phi.set(q[ipp][1], _added_color(red, ch, 3))
    phi.set(q[i][1], _added_color(red, ch, 0))
    phi.set(q[ip][1], _added_color(red, ch, 1))
    _greedy_seq(
        g, phi, [q[t][1] for t in range(len(q)) if t not in (i, ip, ipp)], red.tag
    )
    hall = [u, p[0]] + [w for w, _, _ in wt] + [qv[0] for qv in q]
    _sdr_seq(g, phi, hall, red.tag)
    _sponsor_tail(g, red, phi, p, [], wt)


def _extend_sponsor_allbad_claim5(g, cfg, red, ch, phi):
    d = red.detail
    u, p, q, wt = d["u"], d["p"], d["q"], d["w"]
    i, ip, j = d["i"], d["ip"], d["j"]
    wj = wt[j][0]
    keep_wj = phi.get(wj)
    _unset_sponsor_locals(phi, wt)
    phi.set(wj, keep_wj)
    phi.set(p[2], _added_color(red, ch, 0))
    phi.set(q[ip][1], _added_color(red, ch, 1))
    phi.set(q[i][1], keep_wj)
    _greedy_seq(g, phi, [q[t][1] for t in range(len(q)) if t not in (i, ip)], red.tag)
    hall = [u, p[0]] + [wt[t][0] for t in range(len(wt)) if t != j]
    hall += [qv[0] for qv in q]
    _sdr_seq(g, phi, hall, red.tag)
    _sponsor_tail(g, red, phi, p, [], wt)


def _extend_sponsor_smallx_a(g, cfg, red, ch, phi):
    d = red.detail
    u, x, p, q, wt = d["u"], d["x"], d["p"], d["q"], d["w"]
    i0 = d["chosen"]
    _unset_sponsor_locals(phi, wt, extra=(x,))
    phi.set(p[2], _added_color(red, ch, 0))
    if i0 != 0:
        phi.set(q[i0][1], _added_color(red, ch, 1))
    _greedy_seq(
        g, phi, [q[t][1] for t in range(len(q)) if t not in (0, i0)], red.tag
    )
    hall = [u, x, p[0]] + [qv[0] for qv in q] + [w for w, _, _ in wt]
    _sdr_seq(g, phi, hall, red.tag)
    _sponsor_tail(g, red, phi, p, [q[0][1]], wt)


def _extend_sponsor_smallx_b(g, cfg, red, ch, phi):
    d = red.detail
    u, x, p, q, wt = d["u"], d["x"], d["p"], d["q"], d["w"]
    z = d["z"]
    keep_z = phi.get(z)
    _unset_sponsor_locals(phi, wt, extra=(x,))
    phi.set(z, keep_z)
    phi.set(p[2], keep_z)
    _greedy_seq(g, phi, [q[t][1] for t in range(1, len(q))], red.tag)
    hall = [u] + [qv[0] for qv in q] + [w for w, _, _ in wt if w != z]
    if x != z:
        hall.append(x)
    _sdr_seq(g, phi, hall, red.tag)
    _greedy_seq(g, phi, [p[0]], red.tag)
    _sponsor_tail(g, red, phi, p, [q[0][1]], wt)


_EXTENDERS: dict[str, Callable] = {
    "greedy": _extend_greedy,
    "cycle-threepaths": _extend_cycle_threepaths,
    "weird-seven": _extend_weird_seven,
    "weird-six": _extend_weird_six,
    "two-consecutive": _extend_two_consecutive,
    "seven-seven": _extend_seven_seven,
    "sponsor-bridges-a": _extend_sponsor_bridges_a,
    "sponsor-bridges-b": _extend_sponsor_bridges_b,
    "sponsor-allbad-k0": _extend_sponsor_allbad_k0,
    "sponsor-allbad-k1": _extend_sponsor_allbad_k1,
    "sponsor-allbad-claim2": _extend_sponsor_allbad_claim2,
    "sponsor-allbad-claim3": _extend_sponsor_allbad_claim3,
    "sponsor-allbad-claim4": _extend_sponsor_allbad_claim4,
    "sponsor-allbad-claim5": _extend_sponsor_allbad_claim5,
    "sponsor-smallx-a": _extend_sponsor_smallx_a,
    "sponsor-smallx-b": _extend_sponsor_smallx_b,
}


def extend_coloring(g: Graph, cfg: Configuration, red: Reduction, ch: Coloring) -> Coloring:
    """Lift a total coloring of the reduced graph back onto ``g``.

    The recipe is the configuration's own; a blocked step (impossible when
    the detector's side conditions held) raises ExtensionError with the
    full constraint state.  The result is re-validated before returning.
    """
    if not ch.is_total(red.graph):
        raise ValueError("reduced-graph coloring must be total")
    if ch.k != PALETTE:
        raise ValueError(f"palette must be {PALETTE}")
    phi = _lift(red, ch)
    _EXTENDERS[red.tag](g, cfg, red, ch, phi)
    ok, violation = is_valid_2distance(g, phi)
    if not ok:
        raise ExtensionError(red.tag, violation, {"stage": "final-validation"})
    return phi


# ---------------------------------------------------------------------------
# vertex classification for the discharging engine


@dataclass(frozen=True)
class VertexClasses:
    """Structural roles used by the charge rules."""

    two_kind: dict[int, str]
    one_path_bridges: frozenset[int]
    bridge_pairs: tuple[dict, ...]
    sponsors: dict[int, int]
    roots: frozenset[int]


def classify_vertices(
    g: Graph, params: PotentialParams = DEFAULT_PARAMS
) -> VertexClasses:
    """Label 2-vertices small/medium/large, find bridge structures, and
    assign sponsors.

    Requires the 3-paths to form a forest of stars: single-path trees root
    at the endpoint with the larger potential once the path's interior is
    removed (smaller id on ties); star centers root their stars; every
    non-root 3-path endpoint sponsors the path's middle vertex.
    """
    if not params.is_default:
        raise DetectionRefused("classification requires coefficients (9, 7)")
    idx = _RunIndex(g)
    for r in idx.runs:
        if r.length == 3 and r.closed:
            raise ForestOfStarsError("a 3-path closes on its own anchor", r)
    cyc = _detect_three_path_cycle(g, idx, None)
    if cyc is not None:
        raise ForestOfStarsError("the 3-paths contain a cycle", cyc.data)
    chain = _detect_three_consecutive_three_paths(g, idx, None)
    if chain is not None:
        raise ForestOfStarsError("three consecutive 3-paths", chain.data)

    two_kind: dict[int, str] = {}
    for v in g.vertices():
        if g.degree(v) == 2:
            n2 = sum(1 for w in g.adjacency[v] if g.degree(w) == 2)
            two_kind[v] = ("large", "medium", "small")[n2]

    one_path: set[int] = set()
    pairs: list[dict] = []
    for r in idx.runs:
        a, b = r.endpoints
        if r.closed:
            continue
        da, db = g.degree(a), g.degree(b)
        if r.length == 1 and ((da == 3 and db >= 6) or (db == 3 and da >= 6)):
            one_path.add(r.internal[0])
        if r.length == 2:
            if da == 7 and db <= 5:
                pairs.append(
                    {"seven": a, "low": b,
                     "near_seven": r.internal[0], "near_low": r.internal[1]}
                )
            elif db == 7 and da <= 5:
                pairs.append(
                    {"seven": b, "low": a,
                     "near_seven": r.internal[1], "near_low": r.internal[0]}
                )

    sponsors: dict[int, int] = {}
    roots: set[int] = set()
    runs3 = [r for r in idx.runs if r.length == 3 and not r.closed]
    incident: dict[int, list[PathDescriptor]] = {}
    for r in runs3:
        for e in r.endpoints:
            incident.setdefault(e, []).append(r)
    for anchor in sorted(incident):
        if len(incident[anchor]) >= 2:
            roots.add(anchor)
            for r in incident[anchor]:
                other = r.endpoints[1] if r.endpoints[0] == anchor else r.endpoints[0]
                sponsors[other] = r.internal[1]
    for r in runs3:
        a, b = r.endpoints
        if a in roots or b in roots:
            continue
        pa = _potential_without(g, set(r.internal), {a}, params)
        pb = _potential_without(g, set(r.internal), {b}, params)
        root = a if (pa > pb or pa == pb) else b
        other = b if root == a else a
        roots.add(root)
        sponsors[other] = r.internal[1]

    return VertexClasses(
        two_kind, frozenset(one_path), tuple(pairs), sponsors, frozenset(roots)
    )


# ---------------------------------------------------------------------------
# the constructive solver


def cycle_pattern(n: int) -> list[int]:
    """A valid distance-2 coloring of the n-cycle in cyclic vertex order."""
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    if n % 3 == 0:
        return [1, 2, 3] * (n // 3)
    if n == 4:
        return [1, 2, 3, 4]
    if n == 5:
        return [1, 2, 3, 4, 5]
    k = n // 3
    tail = [1, 2, 3, 4] if n % 3 == 1 else [1, 2, 3, 4, 5]
    return [1, 2, 3] * (k - 1) + tail


def _induced(g: Graph, comp: list[int]) -> tuple[Graph, dict[int, int]]:
    remap = {v: i for i, v in enumerate(comp)}
    inside = set(comp)
    edges = [
        (remap[u], remap[v]) for u, v in g.edges() if u in inside and v in inside
    ]
    return Graph(len(comp), edges), remap


def _base_color(g: Graph) -> Coloring:
    """Color a residual graph on which no configuration fires."""
    phi = Coloring(PALETTE)
    if g.n == 0:
        return phi
    if g.n + g.m <= BASE_THRESHOLD:
        c = color_2distance(g, PALETTE)
        if c is None:
            raise ConstructiveFailure("exhaustive base case found no 8-coloring")
        return c
    _, cycles = degree_two_runs(g)
    cycle_by_set = {frozenset(c): c for c in cycles}
    for comp in connected_components(g):
        if len(comp) == 1:
            phi.set(comp[0], 1)
            continue
        key = frozenset(comp)
        if key in cycle_by_set:
            ring = cycle_by_set[key]
            for v, c in zip(ring, cycle_pattern(len(ring))):
                phi.set(v, c)
            continue
        sub, remap = _induced(g, comp)
        if sub.max_degree() == 7:
            raise InternalContradiction(
                "no configuration fires on an irreducible max-degree-7 component"
            )
        c = color_2distance(sub, PALETTE, budget=5_000_000)
        if c is None:
            raise ConstructiveFailure(
                "irreducible low-degree component admits no 8-coloring"
            )
        for v in comp:
            phi.set(v, c.get(remap[v]))
    return phi


def constructive_color(
    g: Graph,
    params: PotentialParams = DEFAULT_PARAMS,
    verify_preconditions: bool = True,
) -> Coloring:
    """Exact 2-distance 8-coloring via chained configuration reductions.

    Preconditions (verified by default): maximum degree at most 7 and exact
    density at most 18/7.  Emits InternalContradiction if no detector fires
    on a non-base max-degree-7 instance, which the underlying result rules
    out.
    """
    if not params.is_default:
        raise DetectionRefused("the solver requires coefficients (9, 7)")
    if g.max_degree() > 7:
        raise ValueError("constructive coloring requires maximum degree <= 7")
    if verify_preconditions and g.m:
        value, witness = mad_exact(g)
        if value > DENSITY_BOUND:
            raise ValueError(f"density {value} exceeds 18/7 (witness {sorted(witness)})")
    chain: list[tuple[Graph, Configuration, Reduction]] = []
    cur = g
    while cur.n + cur.m > BASE_THRESHOLD:
        cfg = detect_configuration(cur, params)
        if cfg is None:
            break
        red = apply_reduction(cur, cfg, params)
        chain.append((cur, cfg, red))
        cur = red.graph
    phi = _base_color(cur)
    for gi, cfg, red in reversed(chain):
        phi = extend_coloring(gi, cfg, red, phi)
    ok, violation = is_valid_2distance(g, phi)
    if not ok:
        raise ExtensionError("solver", violation, {"stage": "final"})
    return phi


# ---------------------------------------------------------------------------
# witness re-validation


def _require(cond: bool, kind: str, message: str) -> None:
    if not cond:
        raise ValueError(f"{kind} witness invalid: {message}")


def _validate_run(g, cfg, key="run", length=None):
    r: PathDescriptor = cfg.data[key]
    r.validate(g)
    if length is not None:
        _require(r.length == length, cfg.kind, f"run length {r.length} != {length}")
    return r


def _validate_degree_one(g, cfg):
    v, u = cfg.data["v"], cfg.data["u"]
    _require(g.degree(v) == 1 and g.has_edge(v, u), cfg.kind, "not a pendant edge")


def _validate_four_plus(g, cfg):
    chain = cfg.data["chain"]
    for a, b in zip(chain, chain[1:]):
        _require(g.has_edge(a, b), cfg.kind, f"missing edge ({a},{b})")
    for v in chain[1:5]:
        _require(g.degree(v) == 2, cfg.kind, f"interior {v} not a 2-vertex")


def _validate_three_bad_end(g, cfg):
    r = _validate_run(g, cfg, length=3)
    if cfg.data["case"] == "closed":
        _require(r.closed, cfg.kind, "run is open")
    else:
        _require(not r.closed, cfg.kind, "run is closed")
        _require(g.degree(cfg.data["low"]) < 7, cfg.kind, "endpoint degree not low")


def _validate_two_bad_ends(g, cfg):
    r = _validate_run(g, cfg, length=2)
    if cfg.data["case"] == "closed":
        _require(r.closed, cfg.kind, "run is open")
    else:
        u, v = r.endpoints
        lo, hi = sorted((g.degree(u), g.degree(v)))
        _require(lo <= 5 and hi <= 6, cfg.kind, "endpoint degrees too high")


def _validate_two_chord(g, cfg):
    r = _validate_run(g, cfg, length=2)
    seven, other = cfg.data["seven"], cfg.data["other"]
    _require(set(r.endpoints) == {seven, other}, cfg.kind, "endpoints mismatch")
    _require(g.has_edge(seven, other), cfg.kind, "chord missing")
    _require(g.degree(seven) == 7 and g.degree(other) <= 6, cfg.kind, "degrees")


def _validate_three_cycle(g, cfg):
    anchors, runs = cfg.data["anchors"], cfg.data["runs"]
    m = len(anchors)
    _require(m == len(runs) and m >= 2, cfg.kind, "shape mismatch")
    for i, r in enumerate(runs):
        r.validate(g)
        _require(r.length == 3, cfg.kind, "run length")
        pair = {anchors[i], anchors[(i + 1) % m]}
        _require(set(r.endpoints) == pair, cfg.kind, "anchors do not chain")


def _validate_small_vertex(g, cfg):
    v, w = cfg.data["v"], cfg.data["w"]
    _require(3 <= g.degree(v) <= 4, cfg.kind, "degree out of range")
    _require(all(g.degree(x) == 2 for x in g.adjacency[v]), cfg.kind, "non-2 neighbor")
    _require(g.has_edge(v, w), cfg.kind, "w not adjacent")
    _require(d_star(g, v) <= ANCHOR + 1, cfg.kind, "reach too large")
    _require(d_star(g, w) <= ANCHOR, cfg.kind, "neighbor reach too large")


def _validate_counting(g, cfg):
    w = cfg.data["w"]
    removed = cfg.data["removed_neighbors"]
    k = len(removed)
    _require(k >= 1, cfg.kind, "empty neighbor list")
    for i, u in enumerate(removed, start=1):
        _require(g.has_edge(w, u), cfg.kind, f"{u} not adjacent to {w}")
        _require(d_star(g, u) <= ANCHOR + i - 1, cfg.kind, f"reach of {u} too big")
    _require(d_star(g, w) <= ANCHOR + k, cfg.kind, "reach of w too big")


def _validate_weird_seven(g, cfg):
    u = cfg.data["u"]
    _require(g.degree(u) == 7, cfg.kind, "center degree")
    for w, ints, far in cfg.data["six"]:
        _require(len(ints) == 2 and far != u and g.degree(far) <= 5, cfg.kind, "slots")
    w, ints, far = cfg.data["extra"]
    case = cfg.data["case"]
    if case == "three-path":
        _require(ints is not None and len(ints) == 3 and far != u, cfg.kind, "extra")
    elif case == "two-path":
        _require(
            ints is not None and len(ints) == 2 and far != u and g.degree(far) <= 6,
            cfg.kind,
            "extra",
        )
    else:
        _require(vertex_signature(g, w).matches((2, 2, 0)), cfg.kind, "extra")


def _validate_weird_six(g, cfg):
    u = cfg.data["u"]
    _require(g.degree(u) == 6, cfg.kind, "center degree")
    for _, ints, far in cfg.data["paths"]:
        _require(len(ints) == 2 and far != u and g.degree(far) == 6, cfg.kind, "slots")


def _validate_two_consecutive(g, cfg, params=DEFAULT_PARAMS):
    u, v, w = cfg.data["u"], cfg.data["v"], cfg.data["w"]
    pu, pw = cfg.data["pu"], cfg.data["pw"]
    _require(len({u, v, w}) == 3, cfg.kind, "anchors not distinct")
    for chain in ((u, *pu, v), (w, *pw, v)):
        for a, b in zip(chain, chain[1:]):
            _require(g.has_edge(a, b), cfg.kind, f"missing edge ({a},{b})")
        for x in chain[1:-1]:
            _require(g.degree(x) == 2, cfg.kind, "interior degree")
    value = _potential_without(g, set(pu) | set(pw), {u, w}, params)
    _require(value == cfg.potentials["bridge"], cfg.kind, "potential drifted")
    _require(value >= 1, cfg.kind, "splice precondition")


def _validate_three_consecutive(g, cfg):
    anchors = cfg.data["anchors"]
    runs = cfg.data["runs"]
    _require(len(set(anchors)) == 4, cfg.kind, "anchors not distinct")
    for i, r in enumerate(runs):
        r.validate(g)
        _require(
            set(r.endpoints) == {anchors[i], anchors[i + 1]}, cfg.kind, "chain break"
        )


def _validate_oriented_sponsor(g, cfg, params=DEFAULT_PARAMS):
    u, v, p = cfg.data["u"], cfg.data["v"], cfg.data["p"]
    _require(g.degree(u) == 7, cfg.kind, "center degree")
    chain = (u, *p, v)
    for a, b in zip(chain, chain[1:]):
        _require(g.has_edge(a, b), cfg.kind, f"missing edge ({a},{b})")
    pot_u = _potential_without(g, set(p), {u}, params)
    pot_v = _potential_without(g, set(p), {v}, params)
    _require(pot_u == cfg.potentials["center"], cfg.kind, "center potential drifted")
    _require(pot_v == cfg.potentials["far"], cfg.kind, "far potential drifted")
    _require(pot_u <= pot_v, cfg.kind, "orientation flipped")


def _validate_seven_seven(g, cfg):
    _validate_oriented_sponsor(g, cfg)
    for _, ints, far in cfg.data["six"]:
        _require(len(ints) == 2 and g.degree(far) <= 5, cfg.kind, "capped slots")
    _require(g.degree(cfg.data["v"]) == 7, cfg.kind, "far degree")


def _validate_sponsor_bridges(g, cfg):
    _validate_oriented_sponsor(g, cfg)
    for _, ints, far in cfg.data["qpaths"]:
        _require(len(ints) == 2 and g.degree(far) <= 5, cfg.kind, "bridge slots")


def _validate_sponsor_all_bad(g, cfg):
    _validate_oriented_sponsor(g, cfg)
    for _, ints, far in cfg.data["qpaths"]:
        _require(len(ints) == 2 and far != cfg.data["u"], cfg.kind, "q slots")
    for w in cfg.data["wvertices"]:
        _require(vertex_signature(g, w).matches((2, 2, 0)), cfg.kind, "w slots")
    _require(
        len(cfg.data["qpaths"]) + len(cfg.data["wvertices"]) == 6, cfg.kind, "arity"
    )


def _validate_sponsor_small_x(g, cfg):
    _validate_oriented_sponsor(g, cfg)
    _require(d_star(g, cfg.data["x"]) <= 12, cfg.kind, "x reach")
    _require(g.degree(cfg.data["qpaths"][0][2]) <= 5, cfg.kind, "first far degree")
    _require(
        len(cfg.data["qpaths"]) + len(cfg.data["wvertices"]) == 5, cfg.kind, "arity"
    )


_VALIDATORS: dict[str, Callable] = {
    "DegreeOne": _validate_degree_one,
    "FourPlusPath": _validate_four_plus,
    "ThreePathBadEnd": _validate_three_bad_end,
    "TwoPathBadEnds": _validate_two_bad_ends,
    "TwoPathChord": _validate_two_chord,
    "ThreePathCycle": _validate_three_cycle,
    "SmallVertex": _validate_small_vertex,
    "CountingPair": _validate_counting,
    "WeirdSeven": _validate_weird_seven,
    "WeirdSix": _validate_weird_six,
    "TwoConsecutiveThreePaths": _validate_two_consecutive,
    "ThreeConsecutiveThreePaths": _validate_three_consecutive,
    "SevenSevenTwoPaths": _validate_seven_seven,
    "SponsorManyBridges": _validate_sponsor_bridges,
    "SponsorAllBadNeighbors": _validate_sponsor_all_bad,
    "SponsorWithSmallX": _validate_sponsor_small_x,
}
