import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from oracles import brute_force_consistent
from metrizability import families
from metrizability.graph import Graph
from metrizability.pathsys import (NON_PATH, NOT_IN_SYSTEM, CapExceeded, EnumerationStats, MalformedSystem,
                                   PathSystem, PathSystemParseError, TieError, all_simple_paths, classify_intersection,
                                   check_consistency, enumerate_consistent, format_path_system,
                                   format_weights, geodesic_system, is_subpath_closed, pairs_of,
                                   parse_path_system, parse_weights, random_consistent)
from metrizability.zoo import zoo_entry


def system(g, chosen):
    """Complete ``chosen`` with direct edges (or the first path) for the other pairs."""
    ch = dict(chosen)
    for pr in pairs_of(g):
        ch.setdefault(pr, pr if pr in g.edges else all_simple_paths(g, *pr)[0])
    return PathSystem(g, ch)


def test_zoo_entry_one_is_consistent():
    assert check_consistency(zoo_entry(1).system).consistent


def test_c4_consistent_example():
    ps = system(families.cycle(4), {(1, 3): (1, 2, 3), (2, 4): (2, 3, 4)})
    assert check_consistency(ps).consistent


def test_c6_inconsistent_example():
    g = families.cycle(6)
    ps = system(g, {(1, 4): (1, 2, 3, 4), (3, 6): (3, 2, 1, 6), (1, 3): (1, 6, 5, 4, 3)})
    report = check_consistency(ps)
    assert not report.consistent
    assert any({v.first, v.second} == {(1, 4), (3, 6)} and v.reason == NOT_IN_SYSTEM
               for v in report.violations)


def test_report_lists_every_violation():
    g = families.cycle(6)
    ps = system(g, {(1, 4): (1, 2, 3, 4), (3, 6): (3, 2, 1, 6), (1, 3): (1, 6, 5, 4, 3)})
    assert len(check_consistency(ps).violations) > 1


@given(st.data())
@settings(max_examples=100)
def test_intersections_of_simple_paths_never_branch(data):
    # the shared subgraph of two simple paths has maximum degree at most 2
    g = families.complete(6)
    options = [p for pr in pairs_of(g) for p in all_simple_paths(g, *pr)]
    p = data.draw(st.sampled_from(options))
    q = data.draw(st.sampled_from(options))
    kind, sub = classify_intersection(p, q)
    assert kind != NON_PATH
    if kind == "path":
        assert set(sub) == set(p) & set(q)


def test_all_simple_paths_examples():
    assert len(all_simple_paths(families.cycle(4), 1, 3)) == 2
    k4 = all_simple_paths(families.complete(4), 1, 2)
    assert k4 == [(1, 2), (1, 3, 2), (1, 3, 4, 2), (1, 4, 2), (1, 4, 3, 2)]
    assert all_simple_paths(families.path_graph(5), 2, 5) == [(2, 3, 4, 5)]


def test_all_simple_paths_cap():
    with pytest.raises(CapExceeded):
        all_simple_paths(families.complete(6), 1, 2, cap=10)
    with pytest.raises(ValueError):
        all_simple_paths(families.cycle(4), 1, 1)


@given(graphs(min_n=2, max_n=7, connected=True), st.data())
@settings(max_examples=80)
def test_all_simple_paths_symmetric_and_relabel_invariant(g, data):
    u, v = data.draw(st.sampled_from(pairs_of(g)))
    n = len(all_simple_paths(g, u, v))
    assert n == len(all_simple_paths(g, v, u))
    perm = list(g.sorted_vertices())
    data.draw(st.randoms()).shuffle(perm)
    mp = dict(zip(g.sorted_vertices(), perm))
    assert n == len(all_simple_paths(g.relabel(mp), mp[u], mp[v]))


def test_geodesic_tie_on_c4():
    with pytest.raises(TieError) as exc:
        geodesic_system(families.cycle(4), {e: Fraction(1) for e in families.cycle(4).edges})
    assert exc.value.pair in ((1, 3), (2, 4))
    a, b = exc.value.paths
    assert a != b and a[0] == b[0] and a[-1] == b[-1]


def test_geodesics_on_a_tree():
    t = Graph.from_edges(5, [(1, 2), (1, 3), (3, 4), (3, 5)])
    ps = geodesic_system(t, {e: Fraction(k + 1, 3) for k, e in enumerate(t.edge_list())})
    assert all(ps.choice[pr] == all_simple_paths(t, *pr)[0] for pr in pairs_of(t))


def test_geodesics_with_perturbed_weights_are_consistent():
    g = zoo_entry(1).graph
    w = {e: 1 + Fraction(1, 2 ** (k + 3)) for k, e in enumerate(g.edge_list())}
    assert check_consistency(geodesic_system(g, w)).consistent


@st.composite
def weighted_graphs(draw):
    g = draw(graphs(min_n=2, max_n=8, connected=True))
    w = {e: Fraction(draw(st.integers(1, 40)), draw(st.integers(1, 7))) for e in g.edge_list()}
    return g, w


@given(weighted_graphs())
@settings(max_examples=150)
def test_geodesic_systems_are_consistent(gw):
    g, w = gw
    try:
        ps = geodesic_system(g, w)
    except TieError:
        return
    assert check_consistency(ps).consistent
    assert is_subpath_closed(ps)


def test_enumeration_on_a_tree():
    t = Graph.from_edges(5, [(1, 2), (2, 3), (2, 4), (4, 5)])
    assert len(list(enumerate_consistent(t))) == 1


@pytest.mark.parametrize("g", [families.cycle(4), families.cycle(5), families.complete(4),
                               families.complete_bipartite(2, 3),
                               Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])],
                         ids=["C4", "C5", "K4", "K23", "diamond"])
def test_enumeration_matches_brute_force(g):
    expected = {format_path_system(ps) for ps in brute_force_consistent(g)}
    got = [format_path_system(ps) for ps in enumerate_consistent(g)]
    assert len(got) == len(set(got))
    assert set(got) == expected


def test_neighborly_enumeration_on_k4():
    g = families.complete(4)
    got = list(enumerate_consistent(g, neighborly=True))
    assert all(ps.is_neighborly() for ps in got)
    expected = [ps for ps in brute_force_consistent(g) if ps.is_neighborly()]
    assert len(got) == len(expected)


def test_neighborly_enumeration_on_w4_matches_filter():
    g = families.wheel(4)
    got = {format_path_system(ps) for ps in enumerate_consistent(g, neighborly=True)}
    expected = {format_path_system(ps) for ps in enumerate_consistent(g) if ps.is_neighborly()}
    assert got == expected


def test_enumeration_is_deterministic_and_truncates():
    g = families.wheel(4)
    a = [format_path_system(p) for p in enumerate_consistent(g, limit=20)]
    b = [format_path_system(p) for p in enumerate_consistent(g, limit=20)]
    assert a == b and len(a) == 20
    stats = EnumerationStats()
    list(enumerate_consistent(g, limit=20, stats=stats))
    assert stats.truncated and stats.emitted == 20


def test_enumeration_node_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_consistent(families.complete(5), node_cap=50))


@given(graphs(min_n=3, max_n=6, connected=True), st.integers(0, 10**6))
@settings(max_examples=60)
def test_enumerated_systems_are_consistent_and_closed(g, seed):
    for ps in enumerate_consistent(g, limit=30, rng=random.Random(seed)):
        assert check_consistency(ps).consistent
        assert is_subpath_closed(ps)


def test_random_consistent_is_consistent():
    rng = random.Random(3)
    for _ in range(20):
        assert check_consistency(random_consistent(families.complete(5), rng)).consistent


def test_subpath_closure_is_a_separate_diagnostic():
    ps = system(families.cycle(6), {(1, 4): (1, 2, 3, 4), (3, 6): (3, 2, 1, 6), (1, 3): (1, 6, 5, 4, 3)})
    assert not is_subpath_closed(ps)


def test_path_system_text_round_trip():
    e = zoo_entry(1)
    ps = parse_path_system(e.system_text, e.graph)
    assert parse_path_system(format_path_system(ps), e.graph) == ps
    assert ps.path(7, 3) == (7, 6, 1, 3)


def test_parser_accepts_appendix_layout():
    g = zoo_entry(1).graph
    text = zoo_entry(1).system_text.replace("\n", ", ")
    assert parse_path_system(text, g) == zoo_entry(1).system


@pytest.mark.parametrize("text, why", [
    ("(1,3,2)\n", "non-adjacent"),
    ("(1,2)\n" + "(1,3,2)\n", "not a simple path"),
    ("(1,3,2)\n(2,3,1)\n", "listed twice"),
    ("(1,x)\n", "bad path"),
    ("hello (1,3,2)\n", "unexpected"),
])
def test_parser_errors(text, why):
    with pytest.raises(PathSystemParseError, match=why):
        parse_path_system(text, zoo_entry(1).graph)


def test_malformed_system_rejected_at_construction():
    g = families.cycle(4)
    with pytest.raises(MalformedSystem):
        PathSystem(g, {(1, 2): (1, 2)})
    with pytest.raises(MalformedSystem):
        system(g, {(1, 3): (1, 3)})


def test_weights_round_trip_and_errors():
    g = families.cycle(3)
    w = parse_weights("1 2 3/2\n2 3 1\n1 3 7/3\n", g)
    assert w[(1, 2)] == Fraction(3, 2)
    assert parse_weights(format_weights(w), g) == w
    for bad in ("1 2 0\n2 3 1\n1 3 1\n", "1 2 1\n", "1 2 1\n2 3 1\n1 3 1\n1 4 1\n", "1 2 a\n2 3 1\n1 3 1\n"):
        with pytest.raises(PathSystemParseError):
            parse_weights(bad, g)
