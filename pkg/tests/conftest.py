import os
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from restricted2m import WeightedGraph

settings.register_profile(
    "repo",
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def random_subcubic(rng: random.Random, n: int, tries: int, wmax: int = 20) -> WeightedGraph:
    """Random simple subcubic graph with integer weights (not necessarily connected)."""
    deg = [0] * n
    seen = set()
    edges = []
    for _ in range(tries):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen or deg[u] >= 3 or deg[v] >= 3:
            continue
        seen.add(key)
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v, rng.randint(0, wmax)))
    return WeightedGraph(n, edges)


@st.composite
def subcubic_graphs(draw, min_n=1, max_n=10, wmax=20):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    tries = draw(st.integers(0, 3 * n))
    return random_subcubic(random.Random(seed), n, tries, wmax)


@pytest.fixture
def triangle345():
    # a=0, b=1, c=2 with w(a,b)=3, w(b,c)=4, w(c,a)=5
    return WeightedGraph(3, [(0, 1, 3), (1, 2, 4), (2, 0, 5)])


@pytest.fixture
def unit_square():
    return WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])


@pytest.fixture
def unit_k4():
    return WeightedGraph(4, [(x, y, 1) for x in range(4) for y in range(x + 1, 4)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(VERDICTS):
        ok, detail = VERDICTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
