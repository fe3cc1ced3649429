"""Screening soundness sweep over small 2-connected graphs.

Every 2-connected graph on at most --max-n vertices (networkx atlas) is
screened; for each one where a rule fires, exhaustive search must find a
non-metric consistent system.  A fired rule with all systems metric is a
false positive and is reported.  Needs networkx.
"""
import argparse
import sys
import time
from collections import Counter

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

from metrizability.graph import Graph
from metrizability.structure import Budget, screen_nonmetrizable, search_nonmetric


def atlas(min_n: int, max_n: int):
    for G in graph_atlas_g():
        n = G.number_of_nodes()
        if min_n <= n <= max_n and nx.is_biconnected(G):
            yield Graph.from_edges(n, [(u + 1, v + 1) for u, v in G.edges()])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--limit", type=int, default=None, help="systems examined per graph")
    ap.add_argument("--rule", default=None, help="only graphs where this rule label fires")
    args = ap.parse_args()
    fired = []
    for g in atlas(args.min_n, args.max_n):
        r = screen_nonmetrizable(g)
        if r is not None and (args.rule is None or r.label() == args.rule):
            fired.append((g, r))
    print(f"{len(fired)} graphs fire a rule: {dict(Counter(r.label() for _, r in fired))}", flush=True)
    tally = Counter()
    for g, r in fired:
        t = time.perf_counter()
        out = search_nonmetric(g, Budget(limit=args.limit))
        if out.system is not None:
            verdict = "confirmed"
        elif out.complete:
            verdict = "FALSE-POSITIVE"
        else:
            verdict = "undecided"
        tally[verdict] += 1
        print(f"{verdict:14s} {r.label():22s} n={g.n} m={g.m} checked={out.checked} "
              f"{time.perf_counter() - t:.1f}s edges={g.edge_list()}", flush=True)
    print(dict(tally))
    return 1 if tally["FALSE-POSITIVE"] else 0


if __name__ == "__main__":
    sys.exit(main())
