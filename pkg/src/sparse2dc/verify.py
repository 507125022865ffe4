"""Corpus generation, end-to-end theorem checking, and falsification hunts.

A corpus record stores a graph (graph6), its provenance, and exact facts
(degree, girth, density, chromatic data).  The hunt streams seeded random
instances through the full pipeline — exact density, configuration
coverage, constructive coloring, charge conservation — and persists any
violation with a replayable witness; the expected number of findings is
zero.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .coloring import SearchBudgetExceeded, chi2_exact, is_valid_2distance
from .discharging import run_discharge
from .families import (
    cycle,
    decorated_tree,
    hoffman_singleton,
    petersen,
    random_hub_network,
    random_skeleton,
    triangle_gadget,
)
from .graph import INFINITE_GIRTH, Graph, check_girth_mad_bound, girth, subdivide
from .io import to_graph6
from .potential import DENSITY_BOUND, mad_exact
from .reductions import (
    ForestOfStarsError,
    InternalContradiction,
    constructive_color,
    detect_configuration,
)


@dataclass(frozen=True)
class CorpusRecord:
    graph6: str
    provenance: dict
    n: int
    m: int
    max_degree: int
    girth: int | None
    mad: Fraction
    chi2: int | tuple[int, int] | None = None
    constructive_status: str | None = None

    def to_json(self) -> dict:
        chi2 = self.chi2
        if isinstance(chi2, tuple):
            chi2 = list(chi2)
        return {
            "graph6": self.graph6,
            "provenance": self.provenance,
            "n": self.n,
            "m": self.m,
            "max_degree": self.max_degree,
            "girth": self.girth,
            "mad": str(self.mad),
            "chi2": chi2,
            "constructive_status": self.constructive_status,
        }


def _facts(g: Graph, provenance: dict, deep: bool = True) -> CorpusRecord:
    value, _ = mad_exact(g) if g.n else (Fraction(0), frozenset())
    gir = girth(g)
    chi2: int | tuple[int, int] | None = None
    status: str | None = None
    if deep:
        try:
            chi2 = chi2_exact(g, budget=2_000_000)
        except SearchBudgetExceeded:  # pragma: no cover - budget guard
            chi2 = None
        if g.max_degree() > 7:
            status = "skipped-degree"
        elif value > DENSITY_BOUND:
            status = "skipped-density"
        else:
            try:
                phi = constructive_color(g, verify_preconditions=False)
                ok, _violation = is_valid_2distance(g, phi)
                status = "valid-8-coloring" if ok else "invalid"
            except (InternalContradiction, SearchBudgetExceeded) as exc:
                status = f"failed: {exc}"
    return CorpusRecord(
        to_graph6(g),
        provenance,
        g.n,
        g.m,
        g.max_degree(),
        None if gir is INFINITE_GIRTH else int(gir),
        value,
        chi2,
        status,
    )


class GenerationError(Exception):
    """The generator could not satisfy its constraints in budget."""


def random_capped_instance(
    rng: random.Random,
    hub_degree: int = 7,
    strict: bool = False,
    retries: int = 60,
) -> tuple[Graph, dict]:
    """A random subdivided-skeleton graph with the exact density bound.

    The skeleton keeps minimum degree 2 and one hub of the requested
    degree; two or three rounds of subdivision push the girth up and the
    density below 18/7 (strictly below when ``strict``).
    """
    for attempt in range(retries):
        n = rng.randint(5, 11)
        extra = rng.randint(0, 2)
        t = rng.choice((2, 3))
        skeleton = random_skeleton(rng, max(n, hub_degree + 1), hub_degree, extra)
        if skeleton.max_degree() > max(7, hub_degree):
            continue
        g = subdivide(skeleton, t)
        if g.max_degree() != hub_degree:
            continue
        value, _ = mad_exact(g)
        if value > DENSITY_BOUND or (strict and value == DENSITY_BOUND):
            continue
        provenance = {
            "generator": "subdivided-skeleton",
            "skeleton_n": skeleton.n,
            "subdivisions": t,
            "attempt": attempt,
        }
        return g, provenance
    raise GenerationError("subdivided-skeleton generator exhausted its retries")


def random_tree_instance(rng: random.Random, hub_degree: int = 7) -> tuple[Graph, dict]:
    g = decorated_tree(
        rng,
        rng.randint(6, 12),
        hub_degree,
        pendant_paths=rng.randint(0, 3),
        subdivision=rng.randint(1, 3),
    )
    return g, {"generator": "decorated-tree"}


def random_hub_instance(rng: random.Random, retries: int = 40) -> tuple[Graph, dict]:
    """A random degree-7 hub network; rich in long-run configurations."""
    for attempt in range(retries):
        hubs = rng.choice((4, 6, 8))
        try:
            g = random_hub_network(rng, hubs)
        except ValueError:
            continue
        if g.max_degree() != 7:
            continue
        value, _ = mad_exact(g)
        if value > DENSITY_BOUND:
            continue
        return g, {"generator": "hub-network", "hubs": hubs, "attempt": attempt}
    raise GenerationError("hub-network generator exhausted its retries")


FIXTURES = {
    "c5": lambda: cycle(5),
    "petersen": petersen,
    "hoffman-singleton": hoffman_singleton,
    "gadget-girth3-d4": lambda: triangle_gadget(4, True),
    "gadget-girth4-d4": lambda: triangle_gadget(4, False),
}


def generate_corpus(
    spec: dict,
    count: int,
    seed: int,
) -> list[CorpusRecord]:
    """Seeded corpus of ``count`` records per the generator spec.

    spec keys: ``kind`` in {"subdivision", "tree", "fixtures"}; for random
    kinds, ``hub_degree`` (default 7) and ``strict`` (density strictly
    below 18/7).  Records carry exact, reproducible facts.
    """
    rng = random.Random(seed)
    kind = spec.get("kind", "subdivision")
    records: list[CorpusRecord] = []
    if kind == "fixtures":
        for name, make in FIXTURES.items():
            record = _facts(make(), {"generator": "fixture", "name": name})
            records.append(record)
        return records[:count] if count else records
    for index in range(count):
        if kind == "subdivision":
            g, provenance = random_capped_instance(
                rng,
                hub_degree=spec.get("hub_degree", 7),
                strict=spec.get("strict", False),
            )
        elif kind == "tree":
            g, provenance = random_tree_instance(
                rng, hub_degree=spec.get("hub_degree", 7)
            )
        elif kind == "hub":
            g, provenance = random_hub_instance(rng)
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
        provenance["seed"] = seed
        provenance["index"] = index
        records.append(_facts(g, provenance))
    return records


def save_corpus(records: list[CorpusRecord], directory: str | Path) -> None:
    """Persist as ``NNNN.g6`` plus ``NNNN.json`` sidecars."""
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    for i, record in enumerate(records):
        stem = f"{i:04d}"
        (path / f"{stem}.g6").write_text(record.graph6 + "\n")
        (path / f"{stem}.json").write_text(
            json.dumps(record.to_json(), indent=2) + "\n"
        )


@dataclass(frozen=True)
class VerificationVerdict:
    density: Fraction
    max_degree: int
    girth: int | None
    density_within_bound: bool
    hypotheses_hold: bool
    chi2: int | tuple[int, int] | None
    constructive_valid: bool | None
    conclusion: bool | None
    girth_at_least_nine: bool
    planarity_asserted: bool
    planar_bound_consistent: bool | None

    def to_json(self) -> dict:
        chi2 = list(self.chi2) if isinstance(self.chi2, tuple) else self.chi2
        return {
            "density": str(self.density),
            "max_degree": self.max_degree,
            "girth": self.girth,
            "density_within_bound": self.density_within_bound,
            "hypotheses_hold": self.hypotheses_hold,
            "chi2": chi2,
            "constructive_valid": self.constructive_valid,
            "conclusion": self.conclusion,
            "girth_at_least_nine": self.girth_at_least_nine,
            "planarity_asserted": self.planarity_asserted,
            "planar_bound_consistent": self.planar_bound_consistent,
        }


def verify_theorem(
    g: Graph, assert_planar: bool = False, budget: int | None = 5_000_000
) -> VerificationVerdict:
    """Check the degree-plus-one colorability claim on one graph.

    Hypotheses: exact density at most 18/7 with maximum degree exactly 7
    (the constructive route), or strictly below 18/7 with maximum degree
    at least 8 (the previously known range, checked by exact search only).
    Budget exhaustion yields an inconclusive verdict, never a false claim.
    """
    density, _ = mad_exact(g) if g.n else (Fraction(0), frozenset())
    delta = g.max_degree()
    gir = girth(g)
    gir_int = None if gir is INFINITE_GIRTH else int(gir)
    within = density <= DENSITY_BOUND
    hypotheses = (delta == 7 and within) or (delta >= 8 and density < DENSITY_BOUND)

    chi2: int | tuple[int, int] | None = None
    constructive_valid: bool | None = None
    conclusion: bool | None = None
    try:
        chi2 = chi2_exact(g, budget=budget)
    except SearchBudgetExceeded:  # pragma: no cover - budget guard
        chi2 = None
    if hypotheses:
        if delta == 7:
            phi = constructive_color(g, verify_preconditions=False)
            constructive_valid = is_valid_2distance(g, phi)[0]
        if isinstance(chi2, int):
            conclusion = chi2 == delta + 1
            if constructive_valid is False:
                conclusion = False
    planar_consistent = None
    if assert_planar and gir_int is not None:
        planar_consistent = check_girth_mad_bound(density, gir_int)
    return VerificationVerdict(
        density,
        delta,
        gir_int,
        within,
        hypotheses,
        chi2,
        constructive_valid,
        conclusion,
        gir_int is None or gir_int >= 9,
        assert_planar,
        planar_consistent,
    )


@dataclass
class HuntReport:
    instances: int = 0
    findings: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def to_json(self) -> dict:
        return {"instances": self.instances, "findings": self.findings}


def _record_finding(report: HuntReport, g: Graph, check: str, detail: str) -> None:
    report.findings.append(
        {
            "check": check,
            "detail": detail,
            "graph6": to_graph6(g),
            "replay": f"sparse2dc verify --input <graph6:{to_graph6(g)}>",
        }
    )


def hunt(
    seed: int,
    budget: int,
    spec: dict | None = None,
    findings_dir: str | Path | None = None,
) -> HuntReport:
    """Stream ``budget`` generated instances through every invariant.

    Checks per instance: configuration coverage (something fires on any
    non-cycle with minimum degree 2), constructive 8-coloring validity,
    and exact charge conservation.  Zero findings expected; any finding is
    persisted under ``findings_dir`` with a replayable witness when a
    directory is given.
    """
    rng = random.Random(seed)
    spec = spec or {"kind": "mixed"}
    report = HuntReport()
    for _ in range(budget):
        try:
            kind = spec.get("kind", "mixed")
            if kind == "mixed":
                kind = rng.choice(("subdivision", "subdivision", "tree", "hub"))
            if kind == "subdivision":
                g, _prov = random_capped_instance(rng, spec.get("hub_degree", 7))
            elif kind == "hub":
                g, _prov = random_hub_instance(rng)
            else:
                g, _prov = random_tree_instance(rng, spec.get("hub_degree", 7))
        except GenerationError:
            continue
        report.instances += 1
        value, _ = mad_exact(g)
        if value > DENSITY_BOUND or g.max_degree() > 7:
            continue
        pure_cycle = g.n and all(g.degree(v) == 2 for v in g.vertices())
        if g.min_degree() >= 2 and not pure_cycle and g.max_degree() == 7:
            try:
                if detect_configuration(g) is None:
                    _record_finding(report, g, "coverage", "no configuration fires")
            except InternalContradiction as exc:  # pragma: no cover
                _record_finding(report, g, "coverage", str(exc))
        try:
            phi = constructive_color(g, verify_preconditions=False)
            ok, violation = is_valid_2distance(g, phi)
            if not ok:
                _record_finding(report, g, "coloring", f"violation {violation}")
        except (InternalContradiction, SearchBudgetExceeded) as exc:
            _record_finding(report, g, "coloring", str(exc))
        if g.n and g.min_degree() >= 2 and g.max_degree() <= 7:
            try:
                ledger = run_discharge(g)
            except ForestOfStarsError:
                ledger = None
            if ledger is not None:
                if ledger.total_final() != 28 * g.m - 36 * g.n:
                    _record_finding(report, g, "conservation", "total drifted")
                if value <= DENSITY_BOUND and ledger.total_final() > 0:
                    _record_finding(report, g, "conservation", "positive total")
    if findings_dir is not None and report.findings:
        path = Path(findings_dir)
        path.mkdir(parents=True, exist_ok=True)
        for i, finding in enumerate(report.findings):
            (path / f"finding-{i:03d}.json").write_text(
                json.dumps(finding, indent=2) + "\n"
            )
    return report
