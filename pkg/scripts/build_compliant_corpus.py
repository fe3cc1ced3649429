"""Build tests/data/compliant_corpus.json for the compliant-edge acceptance check.

Collects 2-connected graphs on at most 7 vertices that have a compliant edge
and records that edge.  Graphs on up to 6 vertices are taken from the atlas
while they stay cheap (at most --max-m edges); on 7 vertices a graph is kept
when decide finishes on both g and g - e within --limit systems each, up to
--max-7 graphs per verdict kind.  The verdicts are not stored; the acceptance test recomputes
them.
"""
import argparse
import json
import time
from pathlib import Path

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

from metrizability.graph import Graph, compliant_edges
from metrizability.structure import Budget, Unknown, decide

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "compliant_corpus.json"

# W_5 (hub 6) plus a vertex on spoke 2-6: the case that corrected the W_5 rule
W5_EAR = [(1, 2), (1, 5), (1, 6), (2, 3), (2, 6), (2, 7), (3, 4), (3, 6), (4, 5), (4, 6), (5, 6), (6, 7)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=9)
    ap.add_argument("--max-7", type=int, default=8)
    ap.add_argument("--limit", type=int, default=3000)
    args = ap.parse_args()
    entries = []
    seven: dict[str, int] = {}
    for G in graph_atlas_g():
        n = G.number_of_nodes()
        if n < 4 or not nx.is_biconnected(G):
            continue
        g = Graph.from_edges(n, [(u + 1, v + 1) for u, v in G.edges()])
        ce = compliant_edges(g)
        if not ce:
            continue
        if n <= 6 and g.m <= args.max_m:
            entries.append({"n": n, "edges": [list(x) for x in g.edge_list()], "compliant": list(ce[0])})
        elif n == 7 and min(seven.get("Metrizable", 0), seven.get("NonMetrizable", 0)) < args.max_7:
            b = Budget(limit=args.limit)
            t = time.perf_counter()
            a = decide(g, b)
            kind = type(a).__name__
            if isinstance(a, Unknown) or seven.get(kind, 0) >= args.max_7:
                continue
            c = decide(g.remove_edge(*ce[0]), b)
            if not isinstance(c, Unknown):
                seven[kind] = seven.get(kind, 0) + 1
                entries.append({"n": n, "edges": [list(x) for x in g.edge_list()], "compliant": list(ce[0])})
                print(f"kept n=7 m={g.m} ({kind}, {time.perf_counter() - t:.1f}s)", flush=True)
    entries.append({"n": 7, "edges": [list(x) for x in W5_EAR], "compliant": [2, 6]})
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"graphs": entries}, indent=1) + "\n")
    print(f"wrote {len(entries)} graphs to {OUT}")


if __name__ == "__main__":
    main()
