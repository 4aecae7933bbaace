import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from unfriendly.graph import FINITE, INFINITE, Graph, PartialColoring  # noqa: E402

settings.register_profile(
    "repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@st.composite
def graphs(draw, min_n=1, max_n=7, labeled=False, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = set(chosen)
    if connected:
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.add((u, v))
    labels = (
        draw(st.lists(st.sampled_from((FINITE, INFINITE)), min_size=n, max_size=n))
        if labeled else [FINITE] * n
    )
    return Graph(n, frozenset(edges), tuple(labels))


@st.composite
def graph_and_coloring(draw, **kw):
    g = draw(graphs(**kw))
    bits = draw(st.lists(st.integers(0, 1), min_size=g.n, max_size=g.n))
    return g, PartialColoring.total(bits)


@pytest.fixture
def p3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def c4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def k4():
    return Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture
def star3():
    """K_{1,3} with an infinite-labeled center 0."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)], infinite=[0])
