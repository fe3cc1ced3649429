"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected and repeated in the pytest terminal summary.
Run directly with ``python3 tests/test_acceptance.py``.
"""
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from oracles import fm_metric
from metrizability import families
from metrizability.certificates import Metric, NonMetric, check_metric, format_certificate, parse_certificate, \
    verify_certificate
from metrizability.graph import Graph, compliant_edges
from metrizability.pathsys import (TieError, check_consistency, enumerate_consistent, geodesic_system,
                                   random_consistent)
from metrizability.structure import (K24_PRIME_9, NON_PLANAR_8, TWO_DISJOINT_CYCLES_11, certify_metrizable,
                                     classify_reduced, decide, screen_nonmetrizable, search_nonmetric)
from metrizability.zoo import load_zoo, zoo_entry

nx = pytest.importorskip("networkx")

RESULTS: list[str] = []

PUBLISHED_TARGETS = {1: (6, 7), 2: (3, 4), 3: (4, 7), 4: (1, 2), 5: (1, 5), 6: (1, 6), 7: (4, 5), 8: (7, 8),
                     9: (3, 4), 10: (3, 4), 11: (7, 8), 12: (5, 8), 13: (3, 4), 14: (4, 5), 15: (7, 8),
                     16: (9, 10)}


def report(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def atlas_two_connected(min_n, max_n):
    from networkx.generators.atlas import graph_atlas_g
    for G in graph_atlas_g():
        n = G.number_of_nodes()
        if min_n <= n <= max_n and nx.is_biconnected(G):
            yield Graph.from_edges(n, [(u + 1, v + 1) for u, v in G.edges()])


def test_certificate_reproduction():
    t = time.perf_counter()
    load_zoo.cache_clear()
    bad = []
    for e in load_zoo(verify=False):
        doc = parse_certificate(e.certificate_text)
        rep = verify_certificate(e.system, doc)
        if not (rep.valid and doc.target == PUBLISHED_TARGETS[e.id] and rep.residual.get(doc.target, 0) > 0):
            bad.append(e.id)
    dt = time.perf_counter() - t
    report("certificate-reproduction", not bad and dt < 10,
           f"{16 - len(bad)}/16 certificates valid with the published target edges, {dt:.2f}s (limit 10s)")


def test_infeasibility_reproduction():
    bad, slowest = [], 0.0
    for e in load_zoo():
        t = time.perf_counter()
        res = check_metric(e.system)
        ok = isinstance(res, NonMetric) and res.certificate.is_valid() and \
            verify_certificate(e.system, parse_certificate(format_certificate(res.certificate.to_doc()))).valid
        dt = time.perf_counter() - t
        slowest = max(slowest, dt)
        if not ok or dt >= 60:
            bad.append(e.id)
    report("infeasibility-reproduction", not bad,
           f"{16 - len(bad)}/16 systems NonMetric with re-verified certificates, slowest {slowest:.2f}s (limit 60s)")


def test_zoo_rediscovery():
    g = zoo_entry(1).graph
    t = time.perf_counter()
    out = search_nonmetric(g)
    dt = time.perf_counter() - t
    ok = out.system is not None and check_consistency(out.system).consistent and \
        verify_certificate(out.system, out.certificate.to_doc()).valid and dt < 600
    report("zoo-rediscovery", ok, f"non-metric system found after {out.checked} systems in {dt:.1f}s (limit 600s)")


def test_oracle_equivalence():
    graphs = systems = disagree = 0
    for g in atlas_two_connected(3, 6):
        graphs += 1
        first = list(enumerate_consistent(g, limit=101))
        if len(first) <= 100:
            sample = first
        else:
            rng = random.Random(graphs)
            sample = [random_consistent(g, rng) for _ in range(100)]
        for ps in sample:
            systems += 1
            disagree += isinstance(check_metric(ps), Metric) != fm_metric(ps)
    # both branches: the zoo systems are non-metric
    zoo_disagree = sum(isinstance(check_metric(e.system), Metric) != fm_metric(e.system) for e in load_zoo())
    report("oracle-equivalence", disagree == 0 and zoo_disagree == 0 and graphs > 0,
           f"{graphs} graphs, {systems} systems, {disagree} disagreements; "
           f"16 non-metric zoo systems, {zoo_disagree} disagreements")


def test_geodesic_round_trip():
    rng = random.Random(2024)
    trials = ties = failures = 0
    while trials < 500:
        n = rng.randint(2, 8)
        es = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.5]
        g = Graph.from_edges(n, es)
        comps = sorted(sorted(c) for c in g.components())
        for a, b in zip(comps, comps[1:]):
            g = g.add_edge(a[0], b[0])
        w = {e: Fraction(rng.randint(1, 50), rng.randint(1, 6)) for e in g.edge_list()}
        try:
            ps = geodesic_system(g, w)
        except TieError:
            ties += 1
            continue
        trials += 1
        res = check_metric(ps)
        ok = check_consistency(ps).consistent and isinstance(res, Metric) and res.strict and \
            geodesic_system(g, res.weights) == ps
        failures += not ok
    report("geodesic-round-trip", failures == 0,
           f"{trials} trials with unique geodesics ({ties} tied draws skipped), {failures} failures")


def test_compliant_edge_invariance():
    data = json.loads((Path(__file__).parent / "data" / "compliant_corpus.json").read_text())["graphs"]
    disagree, kinds = [], {}
    for item in data:
        g = Graph.from_edges(item["n"], [tuple(e) for e in item["edges"]])
        e = tuple(item["compliant"])
        assert e in compliant_edges(g) and g.n <= 7
        a, b = decide(g), decide(g.remove_edge(*e))
        ka, kb = type(a).__name__, type(b).__name__
        kinds[ka] = kinds.get(ka, 0) + 1
        if ka != kb or ka == "Unknown":
            disagree.append((g.edge_list(), e, ka, kb))
    report("compliant-edge-invariance", len(data) >= 20 and not disagree,
           f"{len(data)} graphs, verdict kinds {kinds}, {len(disagree)} disagreements")


def test_structural_theorems():
    checks = {}
    r = screen_nonmetrizable(families.prism(6))
    checks["hexagonal prism -> TwoDisjointCycles11"] = r is not None and r.tag == TWO_DISJOINT_CYCLES_11
    g = families.k24_prime().subdivide(1, 3, 3)
    r = screen_nonmetrizable(g)
    checks["9-vertex K24' subdivision -> K24Prime9"] = g.n == 9 and r is not None and r.tag == K24_PRIME_9
    g = families.complete_bipartite(3, 3).subdivide(1, 4, 2)
    r = screen_nonmetrizable(g)
    checks["8-vertex non-planar -> NonPlanar8"] = g.n == 8 and r is not None and r.tag == NON_PLANAR_8
    rng = random.Random(7)
    mop = [families.random_maximal_outerplanar(rng.randint(3, 12), rng) for _ in range(100)]
    checks["100 maximal outerplanar certified"] = all(
        (w := certify_metrizable(h)) is not None and w.kind == "Outerplanar" for h in mop)
    checks["K_{2,n}, n=4..8 certified"] = all(
        (w := certify_metrizable(families.complete_bipartite(2, k))) is not None and (w.kind, w.n) == ("K2n", k)
        for k in range(4, 9))
    targets = [("K_{2,3}", families.complete_bipartite(2, 3), None), ("K_4", families.complete(4), None),
               ("W_4", families.wheel(4), None),
               ("W_4'", families.wheel4_prime(), [e for e in families.wheel4_prime().edge_list() if e != (1, 3)])]
    for name, pattern, edges in targets:
        rng = random.Random(name)
        hits = 0
        for _ in range(100):
            h = families.random_subdivision(pattern, rng, 3, edges)
            c = classify_reduced(h)
            hits += not compliant_edges(h) and c.kind == "SubdivisionOf" and c.pattern == name
        checks[f"classify {name} subdivisions 100/100"] = hits == 100
    failed = [k for k, v in checks.items() if not v]
    report("structural-theorems", not failed,
           f"{len(checks) - len(failed)}/{len(checks)} checks" + (f"; failed: {failed}" if failed else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
