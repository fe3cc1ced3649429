"""Screening rules, the structural classifier for reduced graphs, sufficient
conditions for metrizability, and the combined decision pipeline.

Every rule here is a necessary condition for metrizability taken from known
results; each fires with a witness that can be re-checked against the input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from . import families
from .certificates import FarkasCertificate, NonMetric, check_metric
from .graph import Graph, ReductionTrace, compliant_edges, reduce_compliant
from .pathsys import (DEFAULT_PATH_CAP, CapExceeded, EnumerationStats, PathSystem, all_simple_paths,
                      enumerate_consistent, pairs_of)
from .subdivision import (DEFAULT_CYCLE_CAP, DEFAULT_NODE_CAP, BudgetExceeded, Embedding,
                          contains_subgraph, find_kuratowski, find_proper_subdivision,
                          find_subdivision, is_outerplanar, is_subdivision_of, two_disjoint_cycles)
from .zoo import load_zoo

# rule tags
ZOO_MINOR = "ZooMinor"
NON_PLANAR_8 = "NonPlanar8"
PRISM_PROPER_7 = "PrismProper7"
W5_SUBGRAPH_7 = "W5Subgraph7"
K24_PRIME_9 = "K24Prime9"
PROPER_K2N = "ProperK2nSubdivision"
TWO_DISJOINT_CYCLES_11 = "TwoDisjointCycles11"
UNCLASSIFIED_REDUCTION = "Theorem12Violation"

PRISM = families.prism(3)
W5 = families.wheel(5)
K24 = families.complete_bipartite(2, 4)
K24_PRIME = families.k24_prime()
K23 = families.complete_bipartite(2, 3)
K4 = families.complete(4)
W4 = families.wheel(4)
W4_PRIME = families.wheel4_prime()


@dataclass(frozen=True)
class Budget:
    node_cap: int = DEFAULT_NODE_CAP          # subdivision search expansions per call
    cycle_cap: int = DEFAULT_CYCLE_CAP        # cycles tried by the disjoint-cycles rule
    path_cap: int = DEFAULT_PATH_CAP          # simple paths per pair
    enum_node_cap: int | None = 10**7         # enumeration search nodes
    limit: int | None = None                  # systems examined by exhaustive search
    exhaustive_max: int = 7                   # largest vertex count searched exhaustively

    def __post_init__(self):
        for name in ("node_cap", "cycle_cap", "path_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("enum_node_cap", "limit"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.exhaustive_max < 0:
            raise ValueError("exhaustive_max must be nonnegative")


@dataclass(frozen=True)
class StructClass:
    """Structural class of a reduced graph: Cycle, K2n, SubdivisionOf or Other."""
    kind: str
    n: int | None = None
    pattern: str | None = None
    embedding: Embedding | None = None

    def label(self) -> str:
        if self.kind == "K2n":
            return f"K_{{2,{self.n}}}"
        if self.kind == "SubdivisionOf":
            return f"subdivision of {self.pattern}"
        return self.kind


@dataclass(frozen=True)
class Reason:
    """A fired screening rule with its witness.

    ``witness`` is an Embedding of ``pattern`` (subdivision rules), a pair of
    disjoint cycles, or the reduction trace with the offending class.
    """
    tag: str
    witness: object
    pattern: Graph | None = None
    zoo_id: int | None = None
    reduced_class: StructClass | None = None

    def label(self) -> str:
        return f"{self.tag}({self.zoo_id})" if self.tag == ZOO_MINOR else self.tag

    def problems(self, g: Graph) -> list[str]:
        """Re-check the witness against ``g``; empty when it holds up."""
        if isinstance(self.witness, Embedding):
            return self.witness.problems(self.pattern, g)
        if self.tag == TWO_DISJOINT_CYCLES_11:
            c1, c2 = self.witness
            out = []
            for c in (c1, c2):
                if len(c) < 3 or len(set(c)) != len(c) or not g.is_path(c) or not g.has_edge(c[0], c[-1]):
                    out.append(f"{c} is not a cycle of the graph")
            if set(c1) & set(c2):
                out.append("cycles share a vertex")
            return out
        if self.tag == UNCLASSIFIED_REDUCTION:
            trace: ReductionTrace = self.witness
            if trace.original != g:
                return ["trace does not start at the graph"]
            steps = trace.replay()
            if steps[-1] != trace.final:
                return ["trace does not replay to its final graph"]
            if classify_reduced(trace.final).kind != "Other":
                return ["final graph is in an allowed class"]
            return []
        return [f"unknown witness for {self.tag}"]


def _screen_rules(g: Graph):
    """(tag, applicable, runner) in evaluation order."""
    n = g.n
    two = g.is_two_connected()

    def no_compliant() -> bool:
        return not compliant_edges(g)

    yield ZOO_MINOR, True, lambda b: _zoo_minor(g, b, exact=True)
    yield NON_PLANAR_8, two and n >= 8, lambda b: _emb(NON_PLANAR_8, find_kuratowski(g, node_cap=b.node_cap))
    yield (TWO_DISJOINT_CYCLES_11, two and n >= 11 and no_compliant(),
           lambda b: _cycles(two_disjoint_cycles(g, b.cycle_cap)))
    yield W5_SUBGRAPH_7, two and n >= 7, lambda b: _w5(g, b)
    yield (PRISM_PROPER_7, two and n >= 7,
           lambda b: _emb(PRISM_PROPER_7, find_proper_subdivision(PRISM, g, node_cap=b.node_cap), PRISM))
    yield (K24_PRIME_9, two and n >= 9,
           lambda b: _emb(K24_PRIME_9, find_subdivision(K24_PRIME, g, node_cap=b.node_cap), K24_PRIME))
    yield PROPER_K2N, two, lambda b: _emb(PROPER_K2N, find_proper_subdivision(K24, g, node_cap=b.node_cap), K24)
    yield UNCLASSIFIED_REDUCTION, two and n >= 11, lambda b: _unclassified_reduction(g, b)
    yield ZOO_MINOR, True, lambda b: _zoo_minor(g, b)


def _emb(tag: str, emb: Embedding | None, pattern: Graph | None = None) -> Reason | None:
    if emb is None:
        return None
    if pattern is None:
        # Kuratowski witness: the pattern is whichever of K5, K33 fits the branch map
        pattern = families.complete(5) if len(emb.branch) == 5 else families.complete_bipartite(3, 3)
    return Reason(tag, emb, pattern)


def _w5(g: Graph, b: Budget) -> Reason | None:
    """W_5 as a subgraph once compliant edges are gone.

    Removing compliant edges keeps metrizability and can destroy a W_5
    subgraph (a spoke doubled by a flat path), so the test runs on the
    reduced graph; its W_5 is also a subgraph of g.
    """
    reduced = reduce_compliant(g).final
    return _emb(W5_SUBGRAPH_7, contains_subgraph(W5, reduced, node_cap=b.node_cap), W5)


def _cycles(pair) -> Reason | None:
    return None if pair is None else Reason(TWO_DISJOINT_CYCLES_11, pair)


def _unclassified_reduction(g: Graph, b: Budget) -> Reason | None:
    trace = reduce_compliant(g)
    cls = classify_reduced(trace.final, node_cap=b.node_cap)
    if cls.kind == "Other":
        return Reason(UNCLASSIFIED_REDUCTION, trace, reduced_class=cls)
    return None


def _zoo_minor(g: Graph, b: Budget, exact: bool = False) -> Reason | None:
    """Zoo graph contained as a topological minor; ``exact`` only tries same-size ones."""
    for entry in load_zoo():
        h = entry.graph
        if h.n > g.n or h.m > g.m or (exact and (h.n, h.m) != (g.n, g.m)):
            continue
        emb = find_subdivision(h, g, node_cap=b.node_cap)
        if emb is not None:
            return Reason(ZOO_MINOR, emb, h, zoo_id=entry.id)
    return None


def screen_nonmetrizable(g: Graph, budget: Budget | None = None,
                         notes: list[str] | None = None) -> Reason | None:
    """First firing non-metrizability rule, or None.

    A zoo graph of exactly the input's size is tried first, then the rules
    cheapest first, then the full zoo scan.  Budget overruns are appended to
    ``notes`` and the remaining rules still run.  Graphs that are not
    2-connected only get the zoo scans.
    """
    budget = budget or Budget()
    for tag, applicable, run in _screen_rules(g):
        if not applicable:
            continue
        try:
            reason = run(budget)
        except (BudgetExceeded, CapExceeded) as exc:
            if notes is not None:
                notes.append(f"{tag}: budget exceeded ({exc})")
            continue
        if reason is not None:
            return reason
    return None


# -- classification ----------------------------------------------------------------


def k2n_size(g: Graph) -> int | None:
    """k if g is isomorphic to K_{2,k} (k >= 2), else None."""
    if g.n < 4:
        return None
    k = g.n - 2
    if g.m != 2 * k:
        return None
    poles = [v for v in g.vertices if g.degree(v) == k]
    if k == 2:
        return 2 if g.is_cycle() else None
    if len(poles) != 2 or g.has_edge(*poles):
        return None
    p, q = poles
    if all(set(g.neighbors(v)) == {p, q} for v in g.vertices if v not in poles):
        return k
    return None


_TARGETS = (("K_{2,3}", K23), ("K_4", K4), ("W_4", W4), ("W_4'", W4_PRIME))


def classify_reduced(g: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> StructClass:
    """Structural class of a 2-connected graph without compliant edges.

    This is a structural statement only, never a metrizability verdict.
    """
    if g.is_cycle():
        return StructClass("Cycle")
    k = k2n_size(g)
    if k is not None and k >= 4:
        return StructClass("K2n", n=k)
    for name, pattern in _TARGETS:
        emb = is_subdivision_of(g, pattern, node_cap=node_cap)
        if emb is not None:
            return StructClass("SubdivisionOf", pattern=name, embedding=emb)
    return StructClass("Other")


# -- sufficient conditions --------------------------------------------------------


@dataclass(frozen=True)
class MetrizableWitness:
    """Why a graph is metrizable: Outerplanar, K2n(n), KnownFact(fact) or ExhaustiveSearch(count)."""
    kind: str
    n: int | None = None
    fact: str | None = None
    count: int | None = None

    def label(self) -> str:
        if self.kind == "K2n":
            return f"K2n(K_{{2,{self.n}}})"
        if self.kind == "KnownFact":
            return f"KnownFact({self.fact})"
        if self.kind == "ExhaustiveSearch":
            return f"ExhaustiveSearch({self.count} consistent systems, all metric)"
        return self.kind


def _is_complete(g: Graph, n: int) -> bool:
    return g.n == n and g.m == n * (n - 1) // 2


def certify_metrizable(g: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> MetrizableWitness | None:
    if g.is_connected() and is_outerplanar(g, node_cap=node_cap):
        return MetrizableWitness("Outerplanar")
    k = k2n_size(g)
    if k is not None and k >= 4:
        return MetrizableWitness("K2n", n=k)
    if _is_complete(g, 6):
        return MetrizableWitness("KnownFact", fact="K_6")
    return None


NONE_NEEDED = "none-needed"


def outerplanar_apex(g: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> int | str | None:
    """Least x with g - x outerplanar; NONE_NEEDED if g already is; None if no x works."""
    if is_outerplanar(g, node_cap=node_cap):
        return NONE_NEEDED
    for x in g.sorted_vertices():
        if is_outerplanar(g.remove_vertex(x), node_cap=node_cap):
            return x
    return None


# -- decision pipeline -------------------------------------------------------------


@dataclass(frozen=True)
class NonMetrizable:
    reason: Reason | None = None
    system: PathSystem | None = None
    certificate: FarkasCertificate | None = None


@dataclass(frozen=True)
class Metrizable:
    witness: MetrizableWitness


@dataclass(frozen=True)
class Unknown:
    notes: tuple[str, ...] = ()


Verdict = Union[NonMetrizable, Metrizable, Unknown]


@dataclass
class SearchOutcome:
    """Result of exhaustively checking consistent systems for a non-metric one."""
    system: PathSystem | None
    certificate: FarkasCertificate | None
    checked: int
    complete: bool
    notes: list[str] = field(default_factory=list)


def _distances(g: Graph, w: dict) -> dict[tuple[int, int], int]:
    """All-pairs shortest distances (Floyd-Warshall) for integer weights."""
    vs = g.sorted_vertices()
    inf = float("inf")
    d = {(a, b): 0 if a == b else inf for a in vs for b in vs}
    for (a, b), x in w.items():
        d[a, b] = d[b, a] = x
    for k in vs:
        for a in vs:
            dak = d[a, k]
            if dak == inf:
                continue
            for b in vs:
                if dak + d[k, b] < d[a, b]:
                    d[a, b] = dak + d[k, b]
    return d


def _realizes(ps: PathSystem, w: dict, dist: dict) -> bool:
    """Whether every chosen path is a w-shortest path."""
    for (u, v), p in ps.choice.items():
        if sum(w[e] for e in ps.edge_set(u, v)) != dist[u, v]:
            return False
    return True


_RECENT_WITNESSES = 16


def search_nonmetric(g: Graph, budget: Budget | None = None, *, neighborly: bool = False) -> SearchOutcome:
    """Enumerate consistent systems until one is not metric.

    Weightings that realized earlier systems are tried first; only systems
    none of them realizes go to the LP.
    """
    budget = budget or Budget()
    stats = EnumerationStats()
    checked = 0
    notes: list[str] = []
    recent: list[tuple[dict, dict]] = []
    try:
        paths = {pr: all_simple_paths(g, pr[0], pr[1], budget.path_cap) for pr in pairs_of(g)}
        for ps in enumerate_consistent(g, neighborly=neighborly, limit=budget.limit,
                                       node_cap=budget.enum_node_cap, path_cap=budget.path_cap, stats=stats):
            checked += 1
            hit = next((k for k, (w, d) in enumerate(recent) if _realizes(ps, w, d)), None)
            if hit is not None:
                recent.insert(0, recent.pop(hit))
                continue
            res = check_metric(ps, budget.path_cap, check=False, paths=paths, strict=False)
            if isinstance(res, NonMetric):
                return SearchOutcome(ps, res.certificate, checked, False, notes)
            recent.insert(0, (res.weights, _distances(g, res.weights)))
            del recent[_RECENT_WITNESSES:]
    except CapExceeded as exc:
        notes.append(f"enumeration: {exc}")
        return SearchOutcome(None, None, checked, False, notes)
    if stats.truncated:
        notes.append(f"enumeration: stopped at limit {budget.limit}")
        return SearchOutcome(None, None, checked, False, notes)
    return SearchOutcome(None, None, checked, True, notes)


def decide(g: Graph, budget: Budget | None = None) -> Verdict:
    """Screen, then certify, then search exhaustively on small graphs."""
    budget = budget or Budget()
    if not g.is_connected():
        return Unknown(("graph is not connected; path systems need a connected host",))
    notes: list[str] = []
    reason = screen_nonmetrizable(g, budget, notes)
    if reason is not None:
        return NonMetrizable(reason=reason)
    try:
        wit = certify_metrizable(g, node_cap=budget.node_cap)
    except BudgetExceeded as exc:
        notes.append(f"certify: budget exceeded ({exc})")
        wit = None
    if wit is not None:
        return Metrizable(wit)
    if g.n > budget.exhaustive_max:
        notes.append(f"exhaustive search skipped: {g.n} vertices > {budget.exhaustive_max}")
        return Unknown(tuple(notes))
    out = search_nonmetric(g, budget)
    if out.system is not None:
        return NonMetrizable(system=out.system, certificate=out.certificate)
    if out.complete:
        return Metrizable(MetrizableWitness("ExhaustiveSearch", count=out.checked))
    return Unknown(tuple(notes + out.notes))
