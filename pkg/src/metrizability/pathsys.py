"""Path systems: one chosen simple path per vertex pair, the consistency
check, geodesic systems from exact weights, and exhaustive enumeration.
"""
from __future__ import annotations

import heapq
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .graph import Edge, Graph, GraphError, Path, canonical_path, edge, path_edges

Pair = tuple[int, int]
WeightFunction = Mapping[Edge, Fraction]

DEFAULT_PATH_CAP = 10**5


class CapExceeded(RuntimeError):
    pass


class MalformedSystem(ValueError):
    pass


class PathSystemParseError(ValueError):
    pass


class TieError(ValueError):
    def __init__(self, pair: Pair, first: Path, second: Path):
        super().__init__(f"pair {pair} has two shortest paths {first} and {second}")
        self.pair = pair
        self.paths = (first, second)


def pairs_of(g: Graph) -> list[Pair]:
    return list(combinations(g.sorted_vertices(), 2))


@dataclass(frozen=True)
class PathSystem:
    """A total choice of one simple path per unordered pair of vertices.

    Paths are stored oriented from the smaller endpoint.
    """
    host: Graph
    choice: Mapping[Pair, Path]
    _edge_sets: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        choice = {}
        for key, p in self.choice.items():
            p = canonical_path(p)
            pair = (p[0], p[-1])
            if tuple(sorted(key)) != pair:
                raise MalformedSystem(f"path {p} stored under pair {key}")
            if not self.host.is_path(p):
                raise MalformedSystem(f"{p} is not a simple path of the host")
            choice[pair] = p
        missing = [pr for pr in pairs_of(self.host) if pr not in choice]
        if missing:
            raise MalformedSystem(f"no path for pairs {missing[:5]}")
        object.__setattr__(self, "choice", choice)
        object.__setattr__(self, "_edge_sets", {pr: frozenset(path_edges(p)) for pr, p in choice.items()})

    def path(self, u: int, v: int) -> Path:
        p = self.choice[(u, v) if u < v else (v, u)]
        return p if p[0] == u else p[::-1]

    def edge_set(self, u: int, v: int) -> frozenset[Edge]:
        return self._edge_sets[(u, v) if u < v else (v, u)]

    def pairs(self) -> list[Pair]:
        return sorted(self.choice)

    def is_neighborly(self) -> bool:
        return all(self.choice[e] == e for e in self.host.edges)


# -- consistency ---------------------------------------------------------------

DISCONNECTED = "disconnected-intersection"
NON_PATH = "non-path-intersection"
NOT_IN_SYSTEM = "intersection-not-in-system"


@dataclass(frozen=True)
class Violation:
    first: Pair
    second: Pair
    reason: str


@dataclass(frozen=True)
class ConsistencyReport:
    violations: tuple[Violation, ...]

    @property
    def consistent(self) -> bool:
        return not self.violations


def intersection(p: Sequence[int], q: Sequence[int]) -> tuple[set[int], set[Edge]]:
    shared_v = set(p) & set(q)
    shared_e = set(path_edges(p)) & set(path_edges(q))
    return shared_v, shared_e


def classify_intersection(p: Sequence[int], q: Sequence[int]) -> tuple[str, Path | None]:
    """One of 'empty', 'vertex', 'path' (with the shared path), or a violation reason."""
    verts, edges = intersection(p, q)
    if not verts:
        return "empty", None
    if len(verts) == 1:
        return "vertex", None
    if len(edges) != len(verts) - 1:
        return DISCONNECTED, None
    deg: dict[int, int] = {v: 0 for v in verts}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if max(deg.values()) > 2:
        return NON_PATH, None
    # the shared subgraph is a sub-path of p; read it off in p's order
    sub = tuple(v for v in p if v in verts)
    if set(path_edges(sub)) != edges:
        return DISCONNECTED, None
    return "path", sub


def check_consistency(ps: PathSystem) -> ConsistencyReport:
    """Every two chosen paths meet in nothing, one vertex, or a chosen path."""
    out = []
    prs = ps.pairs()
    for i, a in enumerate(prs):
        pa = ps.choice[a]
        for b in prs[i + 1:]:
            kind, sub = classify_intersection(pa, ps.choice[b])
            if kind in ("empty", "vertex"):
                continue
            if kind == "path":
                if frozenset(path_edges(sub)) != ps.edge_set(sub[0], sub[-1]):
                    out.append(Violation(a, b, NOT_IN_SYSTEM))
            else:
                out.append(Violation(a, b, kind))
    return ConsistencyReport(tuple(out))


def is_subpath_closed(ps: PathSystem) -> bool:
    """Diagnostic: every subpath of every chosen path is itself chosen."""
    for p in ps.choice.values():
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if frozenset(path_edges(p[i:j + 1])) != ps.edge_set(p[i], p[j]):
                    return False
    return True


# -- simple paths ----------------------------------------------------------------


def all_simple_paths(g: Graph, u: int, v: int, cap: int = DEFAULT_PATH_CAP) -> list[Path]:
    """All simple u-v paths in lexicographic order; CapExceeded past ``cap``."""
    if u == v:
        raise ValueError("endpoints must differ")
    out: list[Path] = []
    path = [u]
    on = {u}

    def dfs() -> None:
        for y in g.neighbors(path[-1]):
            if y == v:
                out.append(tuple(path) + (v,))
                if len(out) > cap:
                    raise CapExceeded(f"more than {cap} simple paths between {u} and {v}")
            elif y not in on:
                path.append(y)
                on.add(y)
                dfs()
                on.discard(path.pop())

    dfs()
    return sorted(out)


# -- weights and geodesics ------------------------------------------------------


def path_weight(w: WeightFunction, path: Sequence[int]) -> Fraction:
    return sum((w[e] for e in path_edges(path)), Fraction(0))


def check_weights(g: Graph, w: WeightFunction) -> None:
    for e in g.edges:
        if e not in w:
            raise GraphError(f"no weight for edge {e}")
        if w[e] <= 0:
            raise GraphError(f"weight of {e} is not positive")


def parse_weights(text: str, g: Graph) -> dict[Edge, Fraction]:
    """Lines ``u v p/q`` (or an integer) with positive rational weights."""
    w: dict[Edge, Fraction] = {}
    for i, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 3:
            raise PathSystemParseError(f"line {i}: expected 'u v p/q'")
        try:
            e = edge(int(parts[0]), int(parts[1]))
            val = Fraction(parts[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise PathSystemParseError(f"line {i}: {exc}") from exc
        if e not in g.edges:
            raise PathSystemParseError(f"line {i}: {e} is not an edge")
        if val <= 0:
            raise PathSystemParseError(f"line {i}: weight must be positive")
        w[e] = val
    try:
        check_weights(g, w)
    except GraphError as exc:
        raise PathSystemParseError(str(exc)) from exc
    return w


def format_weights(w: WeightFunction) -> str:
    return "".join(f"{u} {v} {w[(u, v)]}\n" for u, v in sorted(w))


def geodesic_system(g: Graph, w: WeightFunction) -> PathSystem:
    """The system of unique w-shortest paths; TieError if some pair has two."""
    check_weights(g, w)
    if not g.is_connected():
        raise GraphError("graph must be connected")
    choice = {}
    for s in g.sorted_vertices():
        dist: dict[int, Fraction] = {s: Fraction(0)}
        heap = [(Fraction(0), s)]
        done: set[int] = set()
        while heap:
            d, x = heapq.heappop(heap)
            if x in done:
                continue
            done.add(x)
            for y in g.neighbors(x):
                nd = d + w[edge(x, y)]
                if y not in dist or nd < dist[y]:
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        # tight predecessors; a unique geodesic means exactly one everywhere
        for t in g.sorted_vertices():
            if t <= s:
                continue
            path = [t]
            while path[-1] != s:
                x = path[-1]
                preds = [y for y in g.neighbors(x) if dist[y] + w[edge(x, y)] == dist[x]]
                if len(preds) > 1:
                    a, b = preds[0], preds[1]
                    first = _tight_path(g, w, dist, a) + tuple(reversed(path))
                    second = _tight_path(g, w, dist, b) + tuple(reversed(path))
                    raise TieError((s, t), first, second)
                path.append(preds[0])
            choice[(s, t)] = tuple(reversed(path))
    return PathSystem(g, choice)


def _tight_path(g: Graph, w: WeightFunction, dist: dict[int, Fraction], x: int) -> Path:
    path = [x]
    while dist[path[-1]] != 0:
        y = path[-1]
        path.append(next(z for z in g.neighbors(y) if dist[z] + w[edge(y, z)] == dist[y]))
    return tuple(reversed(path))


# -- text format -----------------------------------------------------------------

_PATH_RE = re.compile(r"\(([^()]*)\)")


def parse_path_system(text: str, g: Graph) -> PathSystem:
    """Parse ``(v0,v1,...,vk)`` entries; omitted pairs default to the direct edge."""
    choice: dict[Pair, Path] = {}
    leftover = _PATH_RE.sub(" ", text)
    if leftover.replace(",", " ").replace("\\", " ").split():
        raise PathSystemParseError(f"unexpected text outside path entries: {leftover.split()[0]!r}")
    for m in _PATH_RE.finditer(text):
        try:
            p = tuple(int(x) for x in m.group(1).split(","))
        except ValueError as exc:
            raise PathSystemParseError(f"bad path entry ({m.group(1)})") from exc
        if len(p) < 2:
            raise PathSystemParseError(f"path ({m.group(1)}) is too short")
        if not g.is_path(p):
            raise PathSystemParseError(f"({m.group(1)}) is not a simple path of the graph")
        pair = (min(p[0], p[-1]), max(p[0], p[-1]))
        if pair in choice:
            raise PathSystemParseError(f"pair {pair} listed twice")
        choice[pair] = p
    for pair in pairs_of(g):
        if pair not in choice:
            if pair not in g.edges:
                raise PathSystemParseError(f"non-adjacent pair {pair} has no path")
            choice[pair] = pair
    return PathSystem(g, choice)


def format_path_system(ps: PathSystem) -> str:
    """One ``(v0,...,vk)`` line per pair not defaulting to its direct edge."""
    lines = ["(" + ",".join(map(str, p)) + ")" for pr, p in sorted(ps.choice.items()) if len(p) > 2 or pr not in ps.host.edges]
    return "".join(line + "\n" for line in lines)


# -- enumeration -----------------------------------------------------------------


@dataclass
class EnumerationStats:
    emitted: int = 0
    nodes: int = 0
    truncated: bool = False


def enumerate_consistent(g: Graph, *, neighborly: bool = False, limit: int | None = None,
                         node_cap: int | None = None, path_cap: int = DEFAULT_PATH_CAP,
                         stats: EnumerationStats | None = None,
                         rng: random.Random | None = None) -> Iterator[PathSystem]:
    """Every consistent path system of ``g``, once each, in a fixed order.

    Pairs are fixed in lexicographic order and candidate paths tried in
    lexicographic order.  Each new path is intersected with the fixed ones:
    a disconnected intersection prunes, and a shared subpath either has to
    match an already chosen path or becomes a forced choice for its pair.
    Stops after ``limit`` systems (``stats.truncated`` set); CapExceeded
    after ``node_cap`` search nodes.  With ``rng`` the candidate order is
    shuffled instead (same set of systems, random order).
    """
    if not g.is_connected():
        raise GraphError("graph must be connected")
    stats = stats if stats is not None else EnumerationStats()
    prs = pairs_of(g)
    cands: dict[Pair, list[Path]] = {}
    for pr in prs:
        if neighborly and pr in g.edges:
            cands[pr] = [pr]
        else:
            cands[pr] = all_simple_paths(g, pr[0], pr[1], path_cap)
        if rng is not None:
            rng.shuffle(cands[pr])
    edge_sets = {p: frozenset(path_edges(p)) for ps in cands.values() for p in ps}
    fixed: dict[Pair, Path] = {}
    forced: dict[Pair, frozenset] = {}

    class _Stop(Exception):
        pass

    def consistent_with_fixed(p: Path) -> list[tuple[Pair, frozenset]] | None:
        new_forced: list[tuple[Pair, frozenset]] = []
        for q in list(fixed.values()) + [p]:
            kind, sub = classify_intersection(p, q)
            if kind in ("empty", "vertex"):
                continue
            if kind != "path":
                return None
            pr = (min(sub[0], sub[-1]), max(sub[0], sub[-1]))
            es = frozenset(path_edges(sub))
            if pr in fixed:
                if edge_sets[fixed[pr]] != es:
                    return None
            else:
                prev = forced.get(pr)
                if prev is not None and prev != es:
                    return None
                if prev is None:
                    if any(f[0] == pr and f[1] != es for f in new_forced):
                        return None
                    new_forced.append((pr, es))
        return new_forced

    def rec(i: int) -> Iterator[PathSystem]:
        if limit is not None and stats.emitted >= limit:
            stats.truncated = True
            raise _Stop
        stats.nodes += 1
        if node_cap is not None and stats.nodes > node_cap:
            raise CapExceeded(f"enumeration exceeded {node_cap} nodes")
        if i == len(prs):
            stats.emitted += 1
            yield PathSystem(g, dict(fixed))
            return
        pr = prs[i]
        want = forced.get(pr)
        for p in cands[pr]:
            if want is not None and edge_sets[p] != want:
                continue
            nf = consistent_with_fixed(p)
            if nf is None:
                continue
            fixed[pr] = p
            added = [f for f in dict(nf).items() if f[0] not in forced]
            for k, es in added:
                forced[k] = es
            yield from rec(i + 1)
            for k, _ in added:
                del forced[k]
            del fixed[pr]

    try:
        yield from rec(0)
    except _Stop:
        return


def random_consistent(g: Graph, rng: random.Random, *, neighborly: bool = False,
                      path_cap: int = DEFAULT_PATH_CAP) -> PathSystem:
    """A consistent system reached by a randomly ordered depth-first search.

    Not uniform over all consistent systems, but every one has positive probability.
    """
    return next(enumerate_consistent(g, neighborly=neighborly, path_cap=path_cap, rng=rng))
