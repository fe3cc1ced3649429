"""Independent oracles used only by the test-suite."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd

from metrizability.certificates import build_dominance_constraints
from metrizability.graph import Graph, path_edges
from metrizability.pathsys import PathSystem, all_simple_paths, check_consistency


class FMBlowup(RuntimeError):
    pass


def fm_feasible(rows: list[dict[int, int]], rhs: list[int], n: int, max_rows: int = 200_000) -> bool:
    """Fourier-Motzkin: is {x in Q^n : rows.x <= rhs} nonempty?

    Uses Chernikov's history rule (a row built from more than k+1 originals
    after k eliminations is redundant) plus duplicate merging.
    """
    cons: dict[tuple, tuple[Fraction, frozenset]] = {}

    def add(store, coefs, b, hist):
        g = 0
        for c in coefs:
            g = gcd(g, c)
        if g == 0:
            if b < 0:
                raise _Empty
            return
        coefs = tuple(c // g for c in coefs)
        b = Fraction(b) / g
        old = store.get(coefs)
        if old is None or b < old[0] or (b == old[0] and len(hist) < len(old[1])):
            store[coefs] = (b, hist)

    class _Empty(Exception):
        pass

    try:
        for i, (r, b) in enumerate(zip(rows, rhs)):
            add(cons, tuple(r.get(k, 0) for k in range(n)), b, frozenset([i]))
        alive = set(range(n))
        for step in range(1, n + 1):
            def cost(v):
                pos = sum(1 for c in cons if c[v] > 0)
                neg = sum(1 for c in cons if c[v] < 0)
                return pos * neg - pos - neg
            v = min(sorted(alive), key=cost)
            alive.discard(v)
            pos = [(c, bh) for c, bh in cons.items() if c[v] > 0]
            neg = [(c, bh) for c, bh in cons.items() if c[v] < 0]
            nxt: dict[tuple, tuple[Fraction, frozenset]] = {}
            for c, bh in cons.items():
                if c[v] == 0:
                    nxt[c] = bh
            for (cp, (bp, hp)), (cn, (bn, hn)) in product(pos, neg):
                hist = hp | hn
                if len(hist) > step + 1:
                    continue
                a, bb = -cn[v], cp[v]
                coefs = tuple(a * x + bb * y for x, y in zip(cp, cn))
                add(nxt, coefs, a * bp + bb * bn, hist)
                if len(nxt) > max_rows:
                    raise FMBlowup(f"{len(nxt)} rows after eliminating {step} variables")
            cons = nxt
        return True
    except _Empty:
        return False


def fm_metric(ps: PathSystem) -> bool:
    """Metricity of a path system decided by Fourier-Motzkin on w >= 1."""
    idx = {e: k for k, e in enumerate(ps.host.edge_list())}
    rows, rhs = [], []
    for con in build_dominance_constraints(ps, check=False):
        row: dict[int, int] = {}
        for e in path_edges(con.system_path):
            row[idx[e]] = row.get(idx[e], 0) + 1
        for e in path_edges(con.alternative):
            row[idx[e]] = row.get(idx[e], 0) - 1
        rows.append(row)
        rhs.append(0)
    for k in range(len(idx)):
        rows.append({k: -1})
        rhs.append(-1)
    return fm_feasible(rows, rhs, len(idx))


def brute_force_consistent(g: Graph) -> list[PathSystem]:
    """Every consistent system by filtering the full product of simple-path choices."""
    prs = list(combinations(g.sorted_vertices(), 2))
    options = [all_simple_paths(g, u, v) for u, v in prs]
    out = []
    for pick in product(*options):
        ps = PathSystem(g, dict(zip(prs, pick)))
        if check_consistency(ps).consistent:
            out.append(ps)
    return out


def _simple_paths(g: Graph, s: int, t: int, avoid: set[int]):
    """Simple s-t paths whose interiors avoid ``avoid`` (independent of the library)."""
    stack = [(s, (s,))]
    while stack:
        x, path = stack.pop()
        for y in g.neighbors(x):
            if y == t:
                yield path + (t,)
            elif y not in path and y not in avoid:
                stack.append((y, path + (y,)))


def brute_has_subdivision(pattern: Graph, host: Graph) -> bool:
    """Exhaustive branch assignment plus exhaustive disjoint path packing."""
    from itertools import permutations
    pv = pattern.sorted_vertices()
    pe = pattern.edge_list()
    for image in permutations(host.sorted_vertices(), len(pv)):
        if any(host.degree(x) < pattern.degree(v) for v, x in zip(pv, image)):
            continue
        phi = dict(zip(pv, image))
        branch = set(image)

        def pack(i: int, used: set[int], used_edges: set) -> bool:
            if i == len(pe):
                return True
            a, b = pe[i]
            for p in _simple_paths(host, phi[a], phi[b], branch | used):
                inner = set(p[1:-1])
                if len(p) == 2 and (min(p), max(p)) in used_edges:
                    continue
                if pack(i + 1, used | inner, used_edges | {(min(p[0], p[1]), max(p[0], p[1]))}):
                    return True
            return False

        if pack(0, set(), set()):
            return True
    return False


def nx_graph(g: Graph):
    import networkx as nx
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def cycle_packing_family(core) -> bool:
    """Is a simple graph with min degree >= 3 one of K5, a wheel, K_{3,k} plus 0..3 edges in the 3-side?

    k is unrestricted; K5 minus an edge, for instance, is K_{3,2} with all three extra edges.
    """
    import networkx as nx
    n = core.number_of_nodes()
    if nx.is_isomorphic(core, nx.complete_graph(5)):
        return True
    if n >= 4 and nx.is_isomorphic(core, nx.wheel_graph(n)):
        return True
    if n >= 4:
        base = nx.complete_bipartite_graph(3, n - 3)
        extras = [(0, 1), (1, 2), (0, 2)]
        for k in range(4):
            h = base.copy()
            h.add_edges_from(extras[:k])
            if nx.is_isomorphic(core, h):
                return True
    return False


def _own_intersection(p, q):
    """('ok', None) for empty/one-vertex, ('path', (a, b, edges)) or ('bad', None)."""
    common = set(p) & set(q)
    if len(common) <= 1:
        return "ok", None
    ep = {frozenset(e) for e in zip(p, p[1:])}
    eq = {frozenset(e) for e in zip(q, q[1:])}
    shared = ep & eq
    if len(shared) != len(common) - 1:
        return "bad", None
    touched = set().union(*shared) if shared else set()
    if touched != common:
        return "bad", None
    ends = [v for v in common if sum(v in e for e in shared) == 1]
    a, b = sorted(ends)
    return "path", (a, b, frozenset(shared))


def count_consistent_independent(g: Graph, limit: int | None = None) -> int:
    """Count consistent systems by backtracking over pairs in distance order.

    Independent of the library's enumerator: every pair of fixed paths is
    checked with its own intersection code, and a shared path must match
    the choice for its ends once that choice is made.
    """
    vs = g.sorted_vertices()
    prs = list(combinations(vs, 2))
    opts = {pr: sorted(_simple_paths(g, pr[0], pr[1], set()), key=lambda p: (len(p), p)) for pr in prs}
    prs.sort(key=lambda pr: (len(opts[pr][0]), len(opts[pr]), pr))
    chosen: dict = {}
    edgesets: dict = {}
    count = 0

    def ok(pr, p):
        pe = frozenset(frozenset(e) for e in zip(p, p[1:]))
        for other, q in chosen.items():
            kind, info = _own_intersection(p, q)
            if kind == "bad":
                return False
            if kind == "path":
                a, b, shared = info
                if (a, b) == pr:
                    if shared != pe:
                        return False
                elif (a, b) in edgesets and edgesets[(a, b)] != shared:
                    return False
        # earlier shared paths whose ends are exactly this pair
        for x, q in chosen.items():
            for y, r in chosen.items():
                if x < y:
                    kind, info = _own_intersection(q, r)
                    if kind == "path" and info[:2] == pr and info[2] != pe:
                        return False
        return True

    def rec(i):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if i == len(prs):
            count += 1
            return
        pr = prs[i]
        for p in opts[pr]:
            if ok(pr, p):
                chosen[pr] = p
                edgesets[pr] = frozenset(frozenset(e) for e in zip(p, p[1:]))
                rec(i + 1)
                del chosen[pr]
                del edgesets[pr]

    rec(0)
    return count
