"""Named graphs used by the screening rules, the classifier and the tests."""
from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph, edge


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(1, n + 1), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts {1..a} and {a+1..a+b}."""
    return Graph.from_edges(a + b, [(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def wheel(k: int) -> Graph:
    """W_k: rim cycle 1..k plus hub k+1."""
    rim = [(i, i % k + 1) for i in range(1, k + 1)]
    return Graph.from_edges(k + 1, rim + [(i, k + 1) for i in range(1, k + 1)])


def wheel4_prime() -> Graph:
    """W_4 plus one rim chord (1-3)."""
    return wheel(4).add_edge(1, 3)


def k24_prime() -> Graph:
    """K_{2,4} (parts {1,2} | {3,4,5,6}) plus the edge 3-4 inside the 4-side."""
    return complete_bipartite(2, 4).add_edge(3, 4)


def prism(k: int = 3) -> Graph:
    """Two k-cycles 1..k and k+1..2k joined by the matching i ~ k+i."""
    es = [(i, i % k + 1) for i in range(1, k + 1)]
    es += [(k + i, k + i % k + 1) for i in range(1, k + 1)]
    es += [(i, k + i) for i in range(1, k + 1)]
    return Graph.from_edges(2 * k, es)


def petersen() -> Graph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def theta(*lengths: int) -> Graph:
    """Two poles 1, 2 joined by internally disjoint paths of the given lengths."""
    es = []
    nxt = 3
    for L in lengths:
        chain = [1] + list(range(nxt, nxt + L - 1)) + [2]
        nxt += L - 1
        es += list(zip(chain, chain[1:]))
    return Graph.from_edges(nxt - 1, es)


def fan(k: int) -> Graph:
    """Path 1..k plus an apex k+1 adjacent to every path vertex."""
    return Graph.from_edges(k + 1, [(i, i + 1) for i in range(1, k)] + [(i, k + 1) for i in range(1, k + 1)])


def random_maximal_outerplanar(n: int, rng: random.Random) -> Graph:
    """Random maximal outerplanar graph on 1..n (n >= 3), labels shuffled.

    Built by repeatedly gluing a triangle onto a random edge of the outer cycle.
    """
    outer = [1, 2, 3]
    es = {(1, 2), (2, 3), (1, 3)}
    for v in range(4, n + 1):
        i = rng.randrange(len(outer))
        a, b = outer[i], outer[(i + 1) % len(outer)]
        es |= {edge(a, v), edge(b, v)}
        outer.insert(i + 1, v)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return Graph.from_edges(n, es).relabel(dict(zip(range(1, n + 1), perm)))


def random_subdivision(g: Graph, rng: random.Random, max_extra: int = 3,
                       edges: list | None = None) -> Graph:
    """Subdivide each edge (or each edge in ``edges``) 0..max_extra times."""
    out = g
    for u, v in sorted(edges if edges is not None else g.edges):
        t = rng.randint(0, max_extra)
        if t:
            out = out.subdivide(u, v, t)
    return out
