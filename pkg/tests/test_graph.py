import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from unfriendly.errors import FormatError, InputError
from unfriendly.graph import (
    FINITE,
    INFINITE,
    Graph,
    PartialColoring,
    components,
    induced,
    load_coloring,
    load_graph,
    neighborhood,
    save_coloring,
    save_graph,
)


def test_neighborhood_examples(p3, c4):
    assert neighborhood(p3, {1}) == {0, 2}
    assert neighborhood(p3, {0, 1, 2}) == frozenset()
    assert neighborhood(c4, {0}) == {1, 3}


def test_neighborhood_rejects_bad_ids(p3):
    with pytest.raises(InputError):
        neighborhood(p3, {7})


def test_induced_examples(k4):
    k3 = induced(k4, {0, 1, 3})
    assert k3.n == 3 and len(k3.edges) == 3
    assert induced(k4, set()).n == 0
    c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    p3 = induced(c5, {1, 2, 3})
    assert sorted(p3.edges) == [(0, 1), (1, 2)]


def test_induced_keeps_labels():
    g = Graph.from_edges(3, [(0, 1), (1, 2)], infinite=[2])
    h = induced(g, {1, 2})
    assert h.labels == (FINITE, INFINITE)


def test_load_small_file():
    g = load_graph(b'{"vertices":[{"id":0,"class":"finite"},{"id":1,"class":"infinite"}],"edges":[[0,1]]}')
    assert g.n == 2 and g.edges == {(0, 1)}
    assert g.labels == (FINITE, INFINITE)


def test_labels_default_to_finite():
    g = load_graph('{"vertices":[{"id":0},{"id":1}],"edges":[]}')
    assert g.labels == (FINITE, FINITE)


@pytest.mark.parametrize(
    "text, needle",
    [
        ('{"vertices":[{"id":0}],"edges":[[0,0]]}', "self-loop"),
        ('{"vertices":[{"id":0},{"id":1}],"edges":[[0,1],[1,0]]}', "duplicate edge"),
        ('{"vertices":[{"id":0,"class":"huge"}]}', "bad label"),
        ('{"vertices":[{"id":0}', "malformed"),
        ('{"vertices":[{"id":3}]}', "dense"),
    ],
)
def test_load_errors_are_located(text, needle):
    with pytest.raises(FormatError) as info:
        load_graph(text)
    assert needle in str(info.value)


def test_constructor_rejects_self_loop():
    with pytest.raises(InputError, match="self-loop"):
        Graph.from_edges(2, [(1, 1)])


def test_components_sorted():
    g = Graph.from_edges(5, [(3, 4), (0, 2)])
    assert components(g) == [[0, 2], [1], [3, 4]]
    assert components(g, {2, 3, 4}) == [[2], [3, 4]]


def test_partial_coloring_checks():
    with pytest.raises(InputError):
        PartialColoring({0: 2})
    with pytest.raises(InputError):
        PartialColoring({0: 1}, frozenset({1}))


def test_coloring_round_trip():
    c = PartialColoring({2: 1, 0: 0}, frozenset({2}))
    data = save_coloring(c)
    assert data == b'{"colors": {"0": 0, "2": 1}, "frozen": [2]}\n'
    assert load_coloring(data) == c


@given(graphs(max_n=8, labeled=True))
def test_graph_round_trip(g):
    data = save_graph(g)
    assert load_graph(data) == g
    assert save_graph(load_graph(data)) == data


@given(graphs(max_n=7), st.data())
def test_neighborhood_of_vertex_has_degree_size(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    assert len(neighborhood(g, {v})) == g.degree(v)


@given(graphs(max_n=7), st.data())
def test_induced_composes(g, data):
    a = data.draw(st.sets(st.integers(0, g.n - 1)))
    b = data.draw(st.sets(st.sampled_from(sorted(a)))) if a else set()
    # relabel b inside induced(g, a): ids are ranks within sorted(a)
    pos = {v: i for i, v in enumerate(sorted(a))}
    twice = induced(induced(g, a), {pos[v] for v in b})
    assert twice == induced(g, b)


@given(graphs(max_n=7), st.data())
def test_neighborhood_monotone_outside(g, data):
    a = data.draw(st.sets(st.integers(0, g.n - 1)))
    b = a | data.draw(st.sets(st.integers(0, g.n - 1)))
    assert neighborhood(g, a) - b <= neighborhood(g, b)
