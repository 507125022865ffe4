"""Exact potential-function machinery for sparse graphs.

The potential of a vertex set A in G is ``rho(A) = a|A| - b|E(G[A])|``
(default coefficients a=9, b=7, matching the density threshold
``mad <= 2a/b = 18/7``).  ``rho_star(A)`` minimizes rho over all supersets
of A; it is computed exactly as a minimum cut of a closure network, never
with floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .flow import FlowNetwork
from .graph import Graph

#: Density threshold tied to the default coefficients: mad <= 18/7.
DENSITY_BOUND = Fraction(18, 7)


@dataclass(frozen=True)
class PotentialParams:
    """Coefficients of the potential a|S| - b|E(S)|."""

    a: int = 9
    b: int = 7

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("potential coefficients must be positive")

    @property
    def is_default(self) -> bool:
        return (self.a, self.b) == (9, 7)


DEFAULT_PARAMS = PotentialParams()


@dataclass(frozen=True)
class PotentialResult:
    value: int
    witness: frozenset[int]
    params: PotentialParams


def _check_subset(g: Graph, a_set: Iterable[int]) -> frozenset[int]:
    out = frozenset(a_set)
    for v in out:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    return out


def rho(g: Graph, a_set: Iterable[int], params: PotentialParams = DEFAULT_PARAMS) -> int:
    """Exact a|A| - b|E(G[A])|."""
    a = _check_subset(g, a_set)
    return params.a * len(a) - params.b * g.edge_count_inside(a)


def _closure_minimum(
    g: Graph,
    forced: frozenset[int],
    vertex_cost: int,
    edge_gain: int,
) -> tuple[int, frozenset[int]]:
    """Minimize ``vertex_cost*|S| - edge_gain*|E(S)|`` over S containing ``forced``.

    Closure construction: the source feeds one node per edge with capacity
    ``edge_gain``; each edge node feeds its two endpoint nodes with
    effectively infinite arcs; every vertex node drains to the sink with
    capacity ``vertex_cost``; forced vertices get an effectively infinite
    source arc.  The min-cut value minus ``edge_gain * m`` is the minimum,
    and the source side names a minimizing S.
    """
    n, m = g.n, g.m
    edges = g.edges()
    infinite = 1 + edge_gain * m + vertex_cost * n
    net = FlowNetwork(2 + n + m)
    source, sink = 0, 1

    def vnode(v: int) -> int:
        return 2 + v

    for v in range(n):
        net.add_arc(vnode(v), sink, vertex_cost)
    for j, (u, v) in enumerate(edges):
        enode = 2 + n + j
        net.add_arc(source, enode, edge_gain)
        net.add_arc(enode, vnode(u), infinite)
        net.add_arc(enode, vnode(v), infinite)
    for v in forced:
        net.add_arc(source, vnode(v), infinite)

    cut = net.max_flow(source, sink)
    side = net.source_side(source)
    witness = frozenset(v for v in range(n) if vnode(v) in side)
    return cut - edge_gain * m, witness


def rho_star(
    g: Graph, a_set: Iterable[int], params: PotentialParams = DEFAULT_PARAMS
) -> PotentialResult:
    """Exact minimum of rho over all supersets of A, with a witness set."""
    a = _check_subset(g, a_set)
    value, witness = _closure_minimum(g, a, params.a, params.b)
    if not a <= witness:
        raise AssertionError("closure witness lost a forced vertex")
    if rho(g, witness, params) != value:
        raise AssertionError("closure value disagrees with direct recount")
    return PotentialResult(value, witness, params)


def _subset_edge_counts(g: Graph) -> list[int]:
    """edge_count_inside for every subset mask of V(g); requires small n."""
    masks = [0] * g.n
    for u, v in g.edges():
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    counts = [0] * (1 << g.n)
    for mask in range(1, 1 << g.n):
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        counts[mask] = counts[rest] + bin(masks[low] & rest).count("1")
    return counts


def rho_star_bruteforce(
    g: Graph, a_set: Iterable[int], params: PotentialParams = DEFAULT_PARAMS
) -> PotentialResult:
    """Exhaustive minimum over every superset of A; test oracle, n <= 20."""
    if g.n > 20:
        raise ValueError("bruteforce oracle refuses n > 20")
    a = _check_subset(g, a_set)
    a_mask = sum(1 << v for v in a)
    counts = _subset_edge_counts(g)
    best_value = None
    best_mask = 0
    for mask in range(1 << g.n):
        if mask & a_mask != a_mask:
            continue
        val = params.a * bin(mask).count("1") - params.b * counts[mask]
        if best_value is None or val < best_value:
            best_value, best_mask = val, mask
    witness = frozenset(v for v in range(g.n) if best_mask >> v & 1)
    return PotentialResult(best_value, witness, params)


def mad_exact(g: Graph) -> tuple[Fraction, frozenset[int]]:
    """Exact maximum average degree with a densest vertex set as witness.

    Dinkelbach-style iteration: for the current density guess p/q, the
    closure reduction minimizes ``p|S| - 2q|E(S)|``; a negative minimum
    yields a strictly denser witness, a zero minimum proves optimality.
    Terminates because each round strictly increases the guess and only
    finitely many densities exist.
    """
    if g.n == 0:
        raise ValueError("mad of the empty graph is undefined")
    if g.m == 0:
        return Fraction(0), frozenset({0})
    density = Fraction(2 * g.m, g.n)
    witness = frozenset(g.vertices())
    while True:
        p, q = density.numerator, density.denominator
        value, candidate = _closure_minimum(g, frozenset(), p, 2 * q)
        if value >= 0:
            return density, witness
        better = Fraction(2 * g.edge_count_inside(candidate), len(candidate))
        if better <= density:
            raise AssertionError("density iteration failed to improve")
        density, witness = better, candidate


def mad_bruteforce(g: Graph) -> Fraction:
    """Exhaustive max over nonempty subsets of 2|E(S)|/|S|; oracle, n <= 20."""
    if g.n > 20:
        raise ValueError("bruteforce oracle refuses n > 20")
    if g.n == 0:
        raise ValueError("mad of the empty graph is undefined")
    counts = _subset_edge_counts(g)
    best = Fraction(0)
    for mask in range(1, 1 << g.n):
        best = max(best, Fraction(2 * counts[mask], bin(mask).count("1")))
    return best


def add_path(g: Graph, u: int, v: int, k: int) -> Graph:
    """Join u and v by a path with ``k`` new internal 2-vertices.

    ``k=0`` adds a bare edge and requires u, v non-adjacent.  New vertices
    receive ids ``n .. n+k-1``.
    """
    if u == v:
        raise ValueError("path endpoints must differ")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError("endpoint out of range")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0 and g.has_edge(u, v):
        raise ValueError("adding a duplicate edge")
    chain = [u] + list(range(g.n, g.n + k)) + [v]
    return Graph(g.n + k, list(g.edges()) + list(zip(chain, chain[1:])))


@dataclass
class LawReport:
    """Outcome of sampling the potential laws on one graph."""

    checked: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, law: str, holds: bool, detail: dict) -> None:
        self.checked[law] = self.checked.get(law, 0) + 1
        if not holds:
            self.violations.append({"law": law, **detail})


def _random_subset(rng: random.Random, n: int, p: float = 0.35) -> frozenset[int]:
    return frozenset(v for v in range(n) if rng.random() < p)


def verify_potential_laws(
    g: Graph,
    trials: int = 50,
    rng: random.Random | None = None,
    params: PotentialParams = DEFAULT_PARAMS,
) -> LawReport:
    """Sample the superset, subgraph, submodularity, boundary, and
    path-addition laws of the potential on ``g``.

    The boundary law additionally requires every potential of ``g`` to be
    nonnegative (density at most 2a/b); it is skipped otherwise.  Violations
    are report content with full witnesses, never exceptions.
    """
    rng = rng or random.Random(0)
    report = LawReport()
    nonnegative = rho_star(g, frozenset(), params).value >= 0

    for _ in range(trials):
        a = _random_subset(rng, g.n)
        b = _random_subset(rng, g.n)
        s = a | _random_subset(rng, g.n)

        ra = rho_star(g, a, params).value
        # superset monotonicity: growing the forced set cannot lower rho*
        rs = rho_star(g, s, params).value
        report.record(
            "superset", rs >= ra, {"A": sorted(a), "S": sorted(s), "lhs": rs, "rhs": ra}
        )

        # passing to a subgraph cannot lower rho*
        if g.m:
            dropped = rng.sample(g.edges(), k=rng.randint(1, min(3, g.m)))
            h = Graph(g.n, [e for e in g.edges() if e not in set(dropped)])
            rha = rho_star(h, a, params).value
            report.record(
                "subgraph",
                rha >= ra,
                {"A": sorted(a), "dropped": dropped, "lhs": rha, "rhs": ra},
            )

        # submodularity of rho* across unions and intersections
        rb = rho_star(g, b, params).value
        run = rho_star(g, a | b, params).value
        rin = rho_star(g, a & b, params).value
        report.record(
            "submodular",
            ra + rb >= run + rin,
            {"A": sorted(a), "B": sorted(b), "sum": ra + rb, "split": run + rin},
        )

        # boundary bound: after deleting A, any S covering N(A) keeps
        # potential at least b|E(A,S)| - rho(A); needs all potentials >= 0
        if nonnegative and a and len(a) < g.n:
            boundary = frozenset(
                w for v in a for w in g.adjacency[v] if w not in a
            )
            s_cover = boundary | (_random_subset(rng, g.n) - a)
            h, remap = _remove_set(g, a)
            cross = sum(1 for u, v in g.edges() if (u in a) != (v in a) and (u in s_cover or v in s_cover))
            mapped = frozenset(remap[v] for v in s_cover)
            lhs = rho_star(h, mapped, params).value
            rhs = params.b * cross - rho(g, a, params)
            report.record(
                "boundary",
                lhs >= rhs,
                {"A": sorted(a), "S": sorted(s_cover), "lhs": lhs, "rhs": rhs},
            )

        # path addition: rho* of sets through {u,v} drops by a bounded amount…
        if g.n >= 2:
            u, v = rng.sample(range(g.n), 2)
            k = rng.randint(0, 3)
            if k == 0 and g.has_edge(u, v):
                continue
            h2 = add_path(g, u, v, k)
            # a path with k internals costs b(k+1) edge units against ak
            drop = params.b - (params.a - params.b) * k
            base = rho_star(g, frozenset({u, v}) | a, params).value
            after = rho_star(h2, frozenset({u, v}) | a, params).value
            report.record(
                "path-drop",
                after >= base - drop,
                {"u": u, "v": v, "k": k, "before": base, "after": after},
            )
            # …and the two-sided chain for sets avoiding the new path
            ra_h2 = rho_star(h2, a, params).value
            ra_uv = rho_star(g, a | {u, v}, params).value
            chain_ok = ra_h2 == ra or (ra_h2 <= ra <= ra_uv <= ra_h2 + drop)
            report.record(
                "path-chain",
                chain_ok,
                {"A": sorted(a), "u": u, "v": v, "k": k,
                 "after": ra_h2, "before": ra, "forced": ra_uv},
            )
    return report


def _remove_set(g: Graph, drop: frozenset[int]) -> tuple[Graph, dict[int, int]]:
    keep = [v for v in g.vertices() if v not in drop]
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in g.edges() if u not in drop and v not in drop]
    return Graph(len(keep), edges), remap
