import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import graphs
from unfriendly.errors import ContractError, InputError
from unfriendly.graph import INFINITE, Graph
from unfriendly.rank import decompose, graph_rank, graph_rank_min, rank_from_definition, rank_table
from unfriendly.tree import TreeOrder, dfs_normal_tree, down_closure, is_antichain, up_closure
from unfriendly.graph import neighborhood

STAR = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)], infinite=[0])
IFI = Graph.from_edges(3, [(0, 1), (1, 2)], infinite=[0, 2])


def test_all_finite_rank_zero(k4):
    assert set(rank_table(k4, dfs_normal_tree(k4, 2)).rank.values()) == {0}


def test_star_centered():
    table = rank_table(STAR, dfs_normal_tree(STAR, 0))
    assert table.rank == {0: 1, 1: 0, 2: 0, 3: 0}


def test_ifi_from_end():
    assert rank_table(IFI, dfs_normal_tree(IFI, 0)).rank == {0: 2, 1: 1, 2: 0}


def test_graph_rank_examples():
    all_inf = Graph.from_edges(3, [(0, 1), (1, 2)], infinite=[0, 1, 2])
    assert all(graph_rank(all_inf, dfs_normal_tree(all_inf, r)) == 0 for r in range(3))
    assert graph_rank(IFI, dfs_normal_tree(IFI, 1)) == 1
    assert graph_rank_min(IFI) == (1, 1)


def test_star_leaf_root():
    # from a leaf the center sits below the root with rank 1, so the root has rank 2
    assert graph_rank(STAR, dfs_normal_tree(STAR, 1)) == 2
    assert graph_rank_min(STAR) == (1, 0)


def test_rank_needs_normal_tree(c4):
    with pytest.raises(ContractError):
        rank_table(c4, TreeOrder(0, {1: 0, 3: 0, 2: 1}))


def test_rank_min_needs_connected():
    with pytest.raises(InputError):
        graph_rank_min(Graph.from_edges(2, []))


def test_decompose_examples(k4):
    d = decompose(k4, dfs_normal_tree(k4, 0))
    assert d.s == frozenset() and d.h == set(range(4))
    d = decompose(STAR, dfs_normal_tree(STAR, 0))
    assert d.s == {1, 2, 3} and d.h == {0}
    ifff = Graph.from_edges(3, [(0, 1), (1, 2)], infinite=[0])
    d = decompose(ifff, dfs_normal_tree(ifff, 0))
    assert d.s == {1} and d.h == {0}


def test_rank_matches_definition_on_small_trees():
    # every labeled tree from the atlas, every root
    for g in oracles.atlas(7):
        if len(g.edges) != g.n - 1:
            continue
        for mask in range(1 << g.n):
            h = g.with_labels(["infinite" if mask >> v & 1 else "finite" for v in range(g.n)])
            for r in range(g.n):
                t = dfs_normal_tree(h, r)
                expected = oracles.rank_by_definition(h, t.parent, r)
                assert rank_table(h, t).rank == expected


@given(graphs(max_n=8, labeled=True, connected=True), st.data())
def test_rank_properties(g, data):
    t = dfs_normal_tree(g, data.draw(st.integers(0, g.n - 1)))
    table = rank_table(g, t).rank
    assert table == rank_from_definition(g, t)
    assert table == oracles.rank_by_definition(g, t.parent, t.root)
    for v in g.vertices:
        homogeneous = len({g.labels[u] for u in t.subtree(v)}) == 1
        assert (table[v] == 0) == homogeneous
        for u in t.subtree(v):
            assert table[u] <= table[v]


@given(graphs(max_n=8, labeled=True, connected=True), st.data())
def test_decompose_properties(g, data):
    t = dfs_normal_tree(g, data.draw(st.integers(0, g.n - 1)))
    d = decompose(g, t)
    assert is_antichain(t, d.s)
    assert not d.h & down_closure(t, d.s)
    for v in d.s:
        assert neighborhood(g, t.subtree(v)) <= up_closure(t, {v}) - {v}
    if g.labels[t.root] is INFINITE:
        assert all(g.labels[v] is INFINITE for v in d.h)
