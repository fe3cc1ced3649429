"""Topological-minor search by backtracking, and the tests built on it.

A pattern is reduced to its branch vertices (degree != 2, plus one vertex per
cycle component) joined by chains; a subdivision of the pattern in a host is
an injective placement of the branch vertices together with internally
disjoint host paths realising the chains.  The search places branch vertices
first (host candidates by descending degree, orbit-based symmetry breaking),
then packs the chain paths shortest-first with a connectivity look-ahead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .graph import Edge, Graph, Path, edge, path_edges
from . import families

DEFAULT_NODE_CAP = 10**6
DEFAULT_CYCLE_CAP = 10**5


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, spent: int):
        super().__init__(f"{what}: budget of {spent} expansions exhausted")
        self.what = what
        self.spent = spent


@dataclass(frozen=True)
class Embedding:
    """Pattern vertex -> host vertex, and pattern edge -> host path."""
    branch: Mapping[int, int]
    paths: Mapping[Edge, Path]

    def host_vertices(self) -> set[int]:
        out = set(self.branch.values())
        for p in self.paths.values():
            out.update(p)
        return out

    def host_edges(self) -> set[Edge]:
        return {e for p in self.paths.values() for e in path_edges(p)}

    def problems(self, pattern: Graph, host: Graph) -> list[str]:
        errs = []
        if set(self.branch) != set(pattern.vertices):
            errs.append("branch map does not cover the pattern")
        images = list(self.branch.values())
        if len(set(images)) != len(images):
            errs.append("branch map is not injective")
        if set(self.paths) != set(pattern.edges):
            errs.append("path map does not cover the pattern edges")
        interiors: set[int] = set()
        for (a, b), p in sorted(self.paths.items()):
            if not host.is_path(p):
                errs.append(f"{p} is not a simple host path")
            if {p[0], p[-1]} != {self.branch.get(a), self.branch.get(b)}:
                errs.append(f"path {p} does not join the images of {a},{b}")
            inner = set(p[1:-1])
            if inner & interiors or inner & set(images):
                errs.append(f"path {p} is not internally disjoint")
            interiors |= inner
        return errs

    def is_valid(self, pattern: Graph, host: Graph) -> bool:
        return not self.problems(pattern, host)

    def is_spanning(self, host: Graph) -> bool:
        return self.host_vertices() == set(host.vertices) and self.host_edges() == set(host.edges)

    def to_json(self) -> dict:
        return {"branch": {str(k): v for k, v in sorted(self.branch.items())},
                "paths": [[list(e), list(p)] for e, p in sorted(self.paths.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "Embedding":
        return cls({int(k): v for k, v in data["branch"].items()},
                   {tuple(e): tuple(p) for e, p in data["paths"]})


# -- pattern decomposition ----------------------------------------------------


@dataclass
class _Chain:
    a: int
    b: int
    pattern_path: tuple[int, ...]      # a, interior pattern vertices..., b
    lows: tuple[int, ...]              # per pattern edge minimum host length
    highs: tuple[int | None, ...]      # per pattern edge maximum (None = unbounded)

    @property
    def lo(self) -> int:
        return max(sum(self.lows), 3 if self.a == self.b else 1)

    @property
    def hi(self) -> int | None:
        return None if None in self.highs else sum(self.highs)  # type: ignore[arg-type]

    @property
    def label(self) -> tuple:
        return (self.lo, self.hi if self.hi is not None else -1)


@dataclass
class _Core:
    branch: list[int]
    degree: dict[int, int]
    chains: list[_Chain]
    labels: dict[frozenset, list] = field(default_factory=dict)


def _decompose(pattern: Graph, lows: Mapping[Edge, int], highs: Mapping[Edge, int]) -> _Core:
    branch = {v for v in pattern.vertices if pattern.degree(v) != 2}
    for comp in pattern.components():
        if not comp & branch:
            branch.add(min(comp))
    chains: list[_Chain] = []
    used: set[Edge] = set()
    for a in sorted(branch):
        for z in pattern.neighbors(a):
            if edge(a, z) in used:
                continue
            walk = [a, z]
            while walk[-1] not in branch:
                x = walk[-1]
                p, q = pattern.neighbors(x)
                walk.append(q if p == walk[-2] else p)
            es = path_edges(walk)
            used.update(es)
            chains.append(_Chain(a, walk[-1], tuple(walk),
                                 tuple(lows.get(e, 1) for e in es),
                                 tuple(highs.get(e) for e in es)))
    core = _Core(sorted(branch), {v: pattern.degree(v) for v in branch}, chains)
    for c in chains:
        core.labels.setdefault(frozenset((c.a, c.b)), []).append(c.label)
    for k in core.labels:
        core.labels[k].sort()
    return core


def _extend_auto(core: _Core, partial: dict[int, int]) -> bool:
    """Can ``partial`` be extended to a label-preserving automorphism of the core?"""
    verts = core.branch
    lab = core.labels

    def ok(mp: dict[int, int], v: int) -> bool:
        w = mp[v]
        if core.degree[v] != core.degree[w]:
            return False
        for u, x in mp.items():
            if lab.get(frozenset((v, u)), []) != lab.get(frozenset((w, x)), []):
                return False
        return True

    mp: dict[int, int] = {}
    for v, w in partial.items():
        mp[v] = w
        if not ok(mp, v):
            return False
    if len(set(mp.values())) != len(mp):
        return False
    rest = [v for v in verts if v not in mp]

    def bt(i: int) -> bool:
        if i == len(rest):
            return True
        v = rest[i]
        taken = set(mp.values())
        for w in verts:
            if w in taken:
                continue
            mp[v] = w
            if ok(mp, v) and bt(i + 1):
                return True
            del mp[v]
        return False

    return bt(0)


def _symmetry_constraints(core: _Core, order: list[int]) -> dict[int, list[int]]:
    """For each branch vertex u, the earlier vertices v with image(v) < image(u) required."""
    must_exceed: dict[int, list[int]] = {v: [] for v in order}
    fixed: dict[int, int] = {}
    for v in order:
        for u in order:
            if u == v or u in fixed:
                continue
            if _extend_auto(core, {**fixed, v: u}):
                must_exceed[u].append(v)
        fixed[v] = v
    return must_exceed


# -- search -------------------------------------------------------------------


class _Search:
    def __init__(self, pattern: Graph, host: Graph, lows, highs, spanning: bool, node_cap: int):
        self.pattern = pattern
        self.host = host
        self.core = _decompose(pattern, lows, highs)
        self.spanning = spanning
        self.cap = node_cap
        self.nodes = 0

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        if self.nodes > self.cap:
            raise BudgetExceeded("subdivision search", self.cap)

    def placement_order(self) -> list[int]:
        core = self.core
        adj: dict[int, list[int]] = {v: [] for v in core.branch}
        for c in core.chains:
            if c.a != c.b:
                adj[c.a].append(c.b)
                adj[c.b].append(c.a)
        order: list[int] = []
        rest = set(core.branch)
        while rest:
            best = max(rest, key=lambda v: (sum(1 for u in adj[v] if u in order), core.degree[v], -v))
            order.append(best)
            rest.remove(best)
        return order

    def run(self) -> Embedding | None:
        host, core = self.host, self.core
        if self.pattern.n > host.n or self.pattern.m > host.m:
            return None
        if self.spanning and (host.m - host.n != self.pattern.m - self.pattern.n):
            return None
        order = self.placement_order()
        self.order = order
        self.must_exceed = _symmetry_constraints(core, order)
        self.hosts_by_degree = sorted(host.vertices, key=lambda x: (-host.degree(x), x))
        # chains are routed once all branch vertices are placed
        pos = {v: i for i, v in enumerate(order)}
        self.chains = sorted(core.chains, key=lambda c: (c.a == c.b, c.hi is None, c.hi or 0,
                                                          max(pos[c.a], pos[c.b]), -c.lo))
        self.phi: dict[int, int] = {}
        found = self.place(0)
        return found

    # branch placement
    def candidate_ok(self, v: int, x: int) -> bool:
        host, core, phi = self.host, self.core, self.phi
        d = core.degree[v]
        if (host.degree(x) != d) if self.spanning else (host.degree(x) < d):
            return False
        for u in self.must_exceed[v]:
            if phi[u] > x:
                return False
        images = set(phi.values())
        for c in core.chains:
            if c.a == c.b or v not in (c.a, c.b):
                continue
            other = c.b if c.a == v else c.a
            if other not in phi:
                continue
            y = phi[other]
            if c.hi == 1 and not host.has_edge(x, y):
                return False
            if c.lo >= 2 and not self.connected(x, y, images | {x}, c.hi):
                return False
        return True

    def connected(self, s: int, t: int, blocked: set[int], limit: int | None) -> bool:
        """BFS from s to t through unblocked vertices, at least one interior vertex."""
        host = self.host
        frontier = [z for z in host.neighbors(s) if z not in blocked]
        seen = set(frontier)
        dist = 2
        while frontier:
            if limit is not None and dist > limit:
                return False
            nxt = []
            for z in frontier:
                for y in host.neighbors(z):
                    if y == t:
                        return True
                    if y not in seen and y not in blocked:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
            dist += 1
        return False

    def place(self, i: int) -> Embedding | None:
        if i == len(self.order):
            return self.route(0, set(), set(), {})
        v = self.order[i]
        used = set(self.phi.values())
        for x in self.hosts_by_degree:
            if x in used:
                continue
            self.tick()
            self.phi[v] = x
            if self.candidate_ok(v, x):
                got = self.place(i + 1)
                if got is not None:
                    return got
            del self.phi[v]
        return None

    # chain routing
    def paths_of_length(self, s: int, t: int, length: int, allowed: set[int]) -> Iterator[Path]:
        host = self.host
        path = [s]

        def dfs() -> Iterator[Path]:
            self.tick()
            cur = path[-1]
            remaining = length - (len(path) - 1)
            if remaining == 1:
                if host.has_edge(cur, t) and (s != t or len(path) >= 3 and path[1] < path[-1]):
                    yield tuple(path) + (t,)
                return
            for y in host.neighbors(cur):
                if y in allowed and y not in path:
                    path.append(y)
                    yield from dfs()
                    path.pop()

        if length == 1:
            if s != t and host.has_edge(s, t):
                yield (s, t)
            return
        yield from dfs()

    def route(self, j: int, interior: set[int], used_direct: set[Edge],
              chosen: dict[int, Path]) -> Embedding | None:
        if j == len(self.chains):
            return self.finish(chosen, interior)
        c = self.chains[j]
        s, t = self.phi[c.a], self.phi[c.b]
        images = set(self.phi.values())
        allowed = set(self.host.vertices) - images - interior
        top = len(allowed) + 1 if c.hi is None else min(c.hi, len(allowed) + 1)
        for length in range(c.lo, top + 1):
            for p in self.paths_of_length(s, t, length, allowed):
                if length == 1:
                    e = edge(s, t)
                    if e in used_direct:
                        continue
                    new_direct = used_direct | {e}
                else:
                    new_direct = used_direct
                new_interior = interior | set(p[1:-1])
                if not self.lookahead(j + 1, images | new_interior):
                    continue
                chosen[j] = p
                got = self.route(j + 1, new_interior, new_direct, chosen)
                if got is not None:
                    return got
                del chosen[j]
        return None

    def lookahead(self, j: int, blocked: set[int]) -> bool:
        for c in self.chains[j:]:
            if c.a == c.b:
                continue
            s, t = self.phi[c.a], self.phi[c.b]
            if c.lo == 1 and self.host.has_edge(s, t):
                continue
            if not self.connected(s, t, blocked, c.hi):
                return False
        return True

    def finish(self, chosen: dict[int, Path], interior: set[int]) -> Embedding | None:
        host = self.host
        if self.spanning:
            covered = set(self.phi.values()) | interior
            n_edges = sum(len(p) - 1 for p in chosen.values())
            if covered != set(host.vertices) or n_edges != host.m:
                return None
        branch = dict(self.phi)
        paths: dict[Edge, Path] = {}
        for j, c in enumerate(self.chains):
            p = chosen[j]
            extra = len(p) - 1 - sum(c.lows)
            sizes = []
            for lo, hi in zip(c.lows, c.highs):
                give = extra if hi is None else min(extra, hi - lo)
                sizes.append(lo + give)
                extra -= give
            at = 0
            for k, size in enumerate(sizes):
                a, b = c.pattern_path[k], c.pattern_path[k + 1]
                seg = p[at:at + size + 1]
                branch.setdefault(a, seg[0])
                branch.setdefault(b, seg[-1])
                paths[edge(a, b)] = seg if a < b else seg[::-1]
                at += size
        return Embedding(branch, paths)


def find_subdivision(pattern: Graph, host: Graph, *,
                     min_lengths: Mapping[Edge, int] | None = None,
                     max_lengths: Mapping[Edge, int] | None = None,
                     node_cap: int = DEFAULT_NODE_CAP) -> Embedding | None:
    """An embedding of a subdivision of ``pattern`` in ``host``, or None.

    ``min_lengths``/``max_lengths`` bound the host path length per pattern
    edge (a max of 1 everywhere turns this into subgraph search).  Raises
    BudgetExceeded after ``node_cap`` search expansions.
    """
    s = _Search(pattern, host, dict(min_lengths or {}), dict(max_lengths or {}), False, node_cap)
    return s.run()


def is_subdivision_of(g: Graph, pattern: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> Embedding | None:
    """A spanning embedding showing ``g`` is exactly a subdivision of ``pattern``."""
    if sorted(g.degree(v) for v in g.vertices if g.degree(v) != 2) != \
            sorted(pattern.degree(v) for v in pattern.vertices if pattern.degree(v) != 2):
        return None
    return _Search(pattern, g, {}, {}, True, node_cap).run()


def contains_subgraph(pattern: Graph, host: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> Embedding | None:
    return find_subdivision(pattern, host, max_lengths={e: 1 for e in pattern.edges}, node_cap=node_cap)


def automorphisms(g: Graph) -> Iterator[dict[int, int]]:
    """All automorphisms of a small simple graph (backtracking)."""
    verts = g.sorted_vertices()
    mp: dict[int, int] = {}

    def bt(i: int) -> Iterator[dict[int, int]]:
        if i == len(verts):
            yield dict(mp)
            return
        v = verts[i]
        taken = set(mp.values())
        for w in verts:
            if w in taken or g.degree(w) != g.degree(v):
                continue
            if all(g.has_edge(v, u) == g.has_edge(w, x) for u, x in mp.items()):
                mp[v] = w
                yield from bt(i + 1)
                del mp[v]

    yield from bt(0)


def edge_orbit_representatives(g: Graph) -> list[Edge]:
    autos = list(automorphisms(g))
    seen: set[Edge] = set()
    reps = []
    for e in g.edge_list():
        if e in seen:
            continue
        reps.append(e)
        seen.update(edge(a[e[0]], a[e[1]]) for a in autos)
    return reps


def find_proper_subdivision(pattern: Graph, host: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> Embedding | None:
    """A subdivision of ``pattern`` in which some pattern edge becomes a path of length >= 2."""
    for e in edge_orbit_representatives(pattern):
        emb = find_subdivision(pattern, host, min_lengths={e: 2}, node_cap=node_cap)
        if emb is not None:
            return emb
    return None


# -- outerplanarity / planarity ----------------------------------------------

K4 = families.complete(4)
K23 = families.complete_bipartite(2, 3)
K5 = families.complete(5)
K33 = families.complete_bipartite(3, 3)


def blocks(g: Graph) -> list[Graph]:
    """Biconnected components with at least 3 vertices (bridges are dropped)."""
    out = []
    cuts = g.cut_vertices()
    seen_edges: set[Edge] = set()
    for e in g.edge_list():
        if e in seen_edges:
            continue
        # grow the block containing e: edges reachable without passing through a cut vertex "between" blocks
        comp_edges = {e}
        stack = [e]
        while stack:
            u, v = stack.pop()
            for x in (u, v):
                for y in g.neighbors(x):
                    f = edge(x, y)
                    if f in comp_edges:
                        continue
                    if x in cuts and not _same_block(g, (u, v), f):
                        continue
                    comp_edges.add(f)
                    stack.append(f)
        seen_edges |= comp_edges
        verts = {x for f in comp_edges for x in f}
        if len(verts) >= 3:
            out.append(Graph(frozenset(verts), frozenset(comp_edges)))
    return out


def _same_block(g: Graph, e: Edge, f: Edge) -> bool:
    """Edges sharing a vertex x lie in one block iff their other ends connect avoiding x."""
    x = (set(e) & set(f)).pop()
    a = e[0] if e[1] == x else e[1]
    b = f[0] if f[1] == x else f[1]
    return any(a in c and b in c for c in g.components(frozenset({x})))


def find_outerplanar_obstruction(g: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> Embedding | None:
    for b in blocks(g):
        for pat in (K4, K23):
            emb = find_subdivision(pat, b, node_cap=node_cap)
            if emb is not None:
                return emb
    return None


def is_outerplanar(g: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    return find_outerplanar_obstruction(g, node_cap=node_cap) is None


def find_kuratowski(g: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> Embedding | None:
    for b in blocks(g):
        if b.n < 5:
            continue
        for pat in (K5, K33):
            emb = find_subdivision(pat, b, node_cap=node_cap)
            if emb is not None:
                return emb
    return None


def is_planar(g: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    return find_kuratowski(g, node_cap=node_cap) is None


# -- cycles -------------------------------------------------------------------


def iter_cycles(g: Graph) -> Iterator[Path]:
    """Simple cycles by increasing length, lexicographic within a length.

    Each cycle is listed once: from its least vertex, with the second vertex
    smaller than the last.
    """
    for length in range(3, g.n + 1):
        for s in g.sorted_vertices():
            path = [s]
            on = {s}

            def dfs() -> Iterator[Path]:
                cur = path[-1]
                if len(path) == length:
                    if g.has_edge(cur, s) and path[1] < path[-1]:
                        yield tuple(path)
                    return
                for y in g.neighbors(cur):
                    if y > s and y not in on:
                        path.append(y)
                        on.add(y)
                        yield from dfs()
                        on.discard(path.pop())

            yield from dfs()


def simple_cycles(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> list[Path]:
    out = []
    for c in iter_cycles(g):
        out.append(c)
        if len(out) > cap:
            raise BudgetExceeded("cycle enumeration", cap)
    return out


def _some_cycle(g: Graph) -> Path | None:
    parent: dict[int, int | None] = {}
    for root in g.sorted_vertices():
        if root in parent:
            continue
        parent[root] = None
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y == parent[x]:
                    continue
                if y in parent:
                    # walk both ends up to their common ancestor
                    ax, ay = [x], [y]
                    while ax[-1] is not None:
                        ax.append(parent[ax[-1]])
                    while ay[-1] is not None:
                        ay.append(parent[ay[-1]])
                    common = next(v for v in ax if v in set(ay))
                    left = ax[:ax.index(common) + 1]
                    right = ay[:ay.index(common)]
                    cyc = left + right[::-1]
                    return tuple(cyc)
                parent[y] = x
                stack.append(y)
    return None


def two_disjoint_cycles(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> tuple[Path, Path] | None:
    """Two vertex-disjoint cycles, trying short first cycles first."""
    for count, c in enumerate(iter_cycles(g)):
        if count >= cap:
            raise BudgetExceeded("cycle enumeration", cap)
        rest = g.induced(set(g.vertices) - set(c))
        if not rest.is_forest():
            other = _some_cycle(rest)
            assert other is not None
            return c, other
    return None
