import os
import random
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from metrizability.graph import Graph  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False, two_connected=False):
    """Random simple graphs on 1..n, optionally filtered for connectivity."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    p = draw(st.sampled_from([0.3, 0.5, 0.7]))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    g = Graph.from_edges(n, [e for e in pairs if rng.random() < p])
    if connected:
        # chain the components together so every draw is usable
        comps = sorted(sorted(c) for c in g.components())
        for a, b in zip(comps, comps[1:]):
            g = g.add_edge(a[0], b[0])
    if two_connected:
        from hypothesis import assume
        assume(g.is_two_connected())
    return g


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
