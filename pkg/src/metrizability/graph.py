"""Simple undirected graphs with stable integer labels, plus the flat-path
machinery (compliant edges, compliant-edge reduction, degree-2 suppression).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]
Path = tuple[int, ...]


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    pass


class CycleInput(GraphError):
    """Raised where an operation has no meaning on a cycle (no branch vertices)."""


class NotTwoConnected(GraphError):
    pass


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise GraphError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [edge(a, b) for a, b in zip(path, path[1:])]


def canonical_path(path: Sequence[int]) -> Path:
    """Orient a path so it starts at its smaller endpoint."""
    p = tuple(path)
    return p if p[0] < p[-1] else p[::-1]


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[int]
    edges: frozenset[Edge]
    _adj: dict[int, tuple[int, ...]] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            if not (u < v):
                raise GraphError(f"edge {(u, v)} not normalised (need u < v)")
            if u not in adj or v not in adj:
                raise GraphError(f"edge {(u, v)} uses an unknown vertex")
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", {v: tuple(sorted(ns)) for v, ns in adj.items()})

    @classmethod
    def from_edges(cls, n: int | Iterable[int], edges: Iterable[Sequence[int]]) -> "Graph":
        """Build from a vertex count (labels 1..n) or an explicit vertex iterable."""
        verts = frozenset(range(1, n + 1)) if isinstance(n, int) else frozenset(n)
        es = set()
        for e in edges:
            u, v = e
            es.add(edge(int(u), int(v)))
        return cls(verts, frozenset(es))

    # -- basic queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.edges

    def is_path(self, path: Sequence[int]) -> bool:
        """True if ``path`` is a simple path of length >= 1 in this graph."""
        if len(path) < 2 or len(set(path)) != len(path):
            return False
        return all(self.has_edge(a, b) for a, b in zip(path, path[1:]))

    # -- derived graphs ------------------------------------------------------

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = edge(u, v)
        if e not in self.edges:
            raise GraphError(f"no edge {e}")
        return Graph(self.vertices, self.edges - {e})

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.vertices, self.edges | {edge(u, v)})

    def remove_vertex(self, x: int) -> "Graph":
        return Graph(self.vertices - {x}, frozenset(e for e in self.edges if x not in e))

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = frozenset(keep)
        return Graph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def subdivide(self, u: int, v: int, times: int = 1) -> "Graph":
        """Replace edge uv by a path with ``times`` new interior vertices."""
        g = self.remove_edge(u, v)
        nxt = max(self.vertices) + 1
        chain = [u] + list(range(nxt, nxt + times)) + [v]
        return Graph(g.vertices | frozenset(chain[1:-1]), g.edges | frozenset(path_edges(chain)))

    def relabel(self, mapping: dict[int, int]) -> "Graph":
        return Graph(frozenset(mapping[v] for v in self.vertices),
                     frozenset(edge(mapping[a], mapping[b]) for a, b in self.edges))

    def normalized(self) -> "Graph":
        """Relabel to 1..n preserving vertex order."""
        return self.relabel({v: i for i, v in enumerate(self.sorted_vertices(), 1)})

    # -- connectivity --------------------------------------------------------

    def components(self, removed: frozenset[int] = frozenset()) -> list[set[int]]:
        seen: set[int] = set(removed)
        comps = []
        for s in self.sorted_vertices():
            if s in seen:
                continue
            comp = {s}
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def cut_vertices(self) -> set[int]:
        """Articulation points via Tarjan's low-link."""
        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        cuts: set[int] = set()
        counter = 0
        for root in self.sorted_vertices():
            if root in disc:
                continue
            disc[root] = low[root] = counter
            counter += 1
            root_children = 0
            stack: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(self._adj[root]))]
            while stack:
                v, parent, it = stack[-1]
                for w in it:
                    if w not in disc:
                        disc[w] = low[w] = counter
                        counter += 1
                        if v == root:
                            root_children += 1
                        stack.append((w, v, iter(self._adj[w])))
                        break
                    if w != parent:
                        low[v] = min(low[v], disc[w])
                else:
                    stack.pop()
                    if stack:
                        p = stack[-1][0]
                        low[p] = min(low[p], low[v])
                        if p != root and low[v] >= disc[p]:
                            cuts.add(p)
            if root_children > 1:
                cuts.add(root)
        return cuts

    def is_two_connected(self) -> bool:
        return self.n >= 3 and self.is_connected() and not self.cut_vertices()

    def is_cycle(self) -> bool:
        return self.n >= 3 and self.is_connected() and all(self.degree(v) == 2 for v in self.vertices)

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    # -- serialization -------------------------------------------------------

    def to_text(self) -> str:
        if self.vertices != frozenset(range(1, self.n + 1)):
            raise GraphError("text format needs labels 1..n; call normalized() first")
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edge_list()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edge_list()]})

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_list()})"


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` + edge-lines format, or its JSON mirror."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            n, edges = int(data["n"]), [tuple(e) for e in data["edges"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise GraphParseError(f"bad JSON graph: {exc}") from exc
        return _checked_graph(n, edges, len(edges))
    lines = [ln.split() for ln in stripped.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise GraphParseError("line 1: expected 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = []
        for i, parts in enumerate(lines[1:], 2):
            if len(parts) != 2:
                raise GraphParseError(f"line {i}: expected 'u v'")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise GraphParseError(str(exc)) from exc
    return _checked_graph(n, edges, m)


def _checked_graph(n: int, edges: list, m: int) -> Graph:
    if n < 1:
        raise GraphParseError("vertex count must be positive")
    if len(edges) != m:
        raise GraphParseError(f"header says {m} edges, found {len(edges)}")
    seen = set()
    for u, v in edges:
        if not (1 <= u < v <= n):
            raise GraphParseError(f"edge {u} {v}: need 1 <= u < v <= n")
        if (u, v) in seen:
            raise GraphParseError(f"duplicate edge {u} {v}")
        seen.add((u, v))
    return Graph.from_edges(n, edges)


# -- flat paths and compliant edges ------------------------------------------


def _walk_flat(g: Graph, start: int, first: int, stop: int | None = None) -> list[int] | None:
    """Follow degree-2 vertices from ``start`` through ``first``.

    Returns the walk up to the first vertex of degree != 2 (or ``stop``), or
    None when the walk closes on itself.
    """
    walk = [start, first]
    prev, cur = start, first
    while cur != stop and g.degree(cur) == 2:
        a, b = g.neighbors(cur)
        nxt = b if a == prev else a
        if nxt == start and nxt != stop:
            return None if g.degree(start) == 2 else walk + [nxt]
        if nxt in walk[1:]:
            return None
        walk.append(nxt)
        prev, cur = cur, nxt
    return walk


def flat_paths(g: Graph) -> list[Path]:
    """All maximal flat paths (length >= 2, interior vertices of degree 2).

    Closed ears (a chain of degree-2 vertices leaving and re-entering the same
    vertex) are not paths and are omitted.
    """
    if g.is_cycle():
        raise CycleInput("a cycle has no flat-path endpoints")
    seen: set[int] = set()
    out: list[Path] = []
    for v in g.sorted_vertices():
        if g.degree(v) != 2 or v in seen:
            continue
        a, b = g.neighbors(v)
        left = _walk_flat(g, v, a)
        right = _walk_flat(g, v, b)
        if left is None or right is None:
            raise CycleInput(f"vertex {v} lies on a cycle component")
        full = left[::-1] + right[1:]
        seen.update(full[1:-1])
        if full[0] == full[-1]:
            continue
        out.append(canonical_path(full))
    return sorted(out)


def compliant_edges(g: Graph) -> list[Edge]:
    """Edges xy whose endpoints are also joined by a flat path."""
    out = []
    for x, y in g.edge_list():
        for z in g.neighbors(x):
            if z == y or g.degree(z) != 2:
                continue
            walk = _walk_flat(g, x, z, stop=y)
            if walk is not None and walk[-1] == y:
                out.append((x, y))
                break
    return out


@dataclass(frozen=True)
class ReductionTrace:
    original: Graph
    removed: tuple[Edge, ...]
    final: Graph

    def replay(self) -> list[Graph]:
        gs = [self.original]
        for e in self.removed:
            gs.append(gs[-1].remove_edge(*e))
        return gs


def reduce_compliant(g: Graph) -> ReductionTrace:
    """Repeatedly delete the lexicographically least compliant edge.

    Stops at a cycle or at a graph without compliant edges.  Deleting a
    compliant edge from a 2-connected non-cycle keeps it 2-connected.
    """
    if not g.is_two_connected():
        raise NotTwoConnected("reduce_compliant needs a 2-connected graph")
    removed = []
    cur = g
    while not cur.is_cycle():
        ce = compliant_edges(cur)
        if not ce:
            break
        removed.append(ce[0])
        cur = cur.remove_edge(*ce[0])
    return ReductionTrace(g, tuple(removed), cur)


# -- suppression -------------------------------------------------------------


@dataclass(frozen=True)
class MultiEdge:
    u: int
    v: int
    inner: tuple[int, ...] = ()  # suppressed vertices, ordered from u to v

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def original_path(self) -> tuple[int, ...]:
        return (self.u, *self.inner, self.v)


@dataclass(frozen=True)
class MultiGraph:
    vertices: frozenset[int]
    edges: tuple[MultiEdge, ...]

    def degree(self, v: int) -> int:
        return sum((e.u == v) + (e.v == v) for e in self.edges)

    def min_degree(self) -> int:
        return min(self.degree(v) for v in self.vertices)

    def is_simple(self) -> bool:
        keys = [frozenset((e.u, e.v)) for e in self.edges]
        return all(not e.is_loop for e in self.edges) and len(set(keys)) == len(keys)

    def to_graph(self) -> Graph:
        if not self.is_simple():
            raise GraphError("multigraph has loops or parallel edges")
        return Graph(self.vertices, frozenset(edge(e.u, e.v) for e in self.edges))

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for e in self.edges if {e.u, e.v} == {u, v})


def suppress_degree_two(g: Graph) -> MultiGraph:
    """Contract every maximal chain of degree-2 vertices into one edge."""
    if g.is_cycle():
        raise CycleInput("cannot suppress a cycle")
    keep = frozenset(v for v in g.vertices if g.degree(v) != 2)
    medges: list[MultiEdge] = []
    used: set[Edge] = set()
    for u in sorted(keep):
        for z in g.neighbors(u):
            if edge(u, z) in used:
                continue
            walk = _walk_flat(g, u, z)
            if walk is None:
                raise CycleInput(f"cycle component through {z}")
            used.update(path_edges(walk))
            medges.append(MultiEdge(walk[0], walk[-1], tuple(walk[1:-1])))
    if len(used) != g.m:
        raise CycleInput("graph has a cycle component")
    return MultiGraph(keep, tuple(medges))
