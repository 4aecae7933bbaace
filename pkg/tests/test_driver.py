import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import graphs
from unfriendly.coloring import cut_size
from unfriendly.errors import ContractError
from unfriendly.graph import Graph, PartialColoring
from unfriendly.presentation import builtin, truncate
from unfriendly.solvers import oracle_maxcut, recursion_driver, verify_theorem
from unfriendly.solvers.driver import drive_region

EMPTY = PartialColoring({})


def brute_check(g, c):
    """Both guarantees by direct enumeration; frozen vertices are exempt."""
    cand = [v for v in g.vertices if g.is_finite(v) and v not in c.frozen]
    if oracles.improving_flip(g, c.colors, cand) is not None:
        return False
    return all(
        oracles.unfriendly_at(g, c.colors, v)
        for v in g.vertices
        if not g.is_finite(v) and v not in c.frozen
    )


def attach(g, k_size, rng):
    """Add ``k_size`` frozen vertices with random colors and random edges into ``g``."""
    n = g.n + k_size
    edges = set(g.edges)
    for k in range(g.n, n):
        for v in rng.sample(range(g.n), rng.randint(1, g.n)):
            edges.add((v, k))
    labels = list(g.labels) + [rng.choice(("finite", "infinite")) for _ in range(k_size)]
    h = Graph(n, frozenset(edges), tuple(labels))
    colors = {k: rng.randint(0, 1) for k in range(g.n, n)}
    return h, PartialColoring(colors, frozenset(colors))


def test_all_finite_gives_max_cut(k4):
    c = recursion_driver(k4, EMPTY)
    assert cut_size(k4, c) == cut_size(k4, oracle_maxcut(k4, EMPTY, range(4)))
    assert verify_theorem(k4, c).ok


def test_all_infinite_is_unfriendly():
    g = Graph.from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)], infinite=range(5))
    c = recursion_driver(g, EMPTY)
    rep = verify_theorem(g, c)
    assert rep.ok and all(rep.unfriendly.values())


def test_star_with_frozen_neighbor():
    # star K_{1,3} with infinite center and a frozen K-vertex 4 adjacent to it
    g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)], infinite=[0])
    k = PartialColoring({4: 1}, frozenset({4}))
    c = recursion_driver(g, k)
    assert c[4] == 1
    assert verify_theorem(g, c).ok and brute_check(g, c)


def test_verify_k4_all_same_fails(k4):
    rep = verify_theorem(k4, PartialColoring.total([0] * 4))
    assert not rep.ok and not rep.strongly_maximal
    assert len(rep.flip_witness) == 2 and rep.dtrans == -4


def test_verify_reports_non_unfriendly(star3):
    rep = verify_theorem(star3, PartialColoring.total([0, 0, 0, 0]))
    assert rep.non_unfriendly == [0]
    assert rep.to_dict()["unfriendly"] == {"0": False}


def test_verify_needs_total(p3):
    with pytest.raises(ContractError):
        verify_theorem(p3, PartialColoring({0: 1}))


def test_drive_region_rejects_colored(p3):
    with pytest.raises(ContractError):
        drive_region(p3, PartialColoring({0: 1}), {0, 1})


def test_driver_keeps_context_fixed():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], infinite=[1])
    c = drive_region(g, PartialColoring({0: 0, 3: 0}), {1, 2})
    assert c[0] == 0 and c[3] == 0 and c.is_total(4)


def test_driver_exhaustive_small():
    """Every connected graph n <= 4, every labeling, K of size 0 or 1."""
    rng = random.Random(3)
    for g in oracles.atlas(4):
        for labels in itertools.product(("finite", "infinite"), repeat=g.n):
            h = g.with_labels(labels)
            for k_size in (0, 1):
                hk, k = attach(h, k_size, rng) if k_size else (h, EMPTY)
                c = recursion_driver(hk, k, debug=True)
                assert all(c[v] == k[v] for v in k.domain)
                assert brute_check(hk, c), (hk, c)
                assert verify_theorem(hk, c).ok


@pytest.mark.parametrize("name", ["ray", "star", "comb_hub", "star_of_rays", "hub_tree",
                                  "double_ray", "infinite_clique_surrogate", "alternating_comb"])
def test_driver_on_truncations(name):
    g = truncate(builtin(name), 6)
    c = recursion_driver(g, EMPTY, debug=True)
    assert verify_theorem(g, c).ok


@given(graphs(min_n=1, max_n=8, labeled=True, connected=True), st.randoms(use_true_random=False))
def test_driver_random(g, rng):
    hk, k = attach(g, rng.randint(0, 2), rng)
    c = recursion_driver(hk, k, debug=True)
    assert all(c[v] == k[v] for v in k.domain)
    rep = verify_theorem(hk, c)
    assert rep.ok, rep.to_dict()
    assert brute_check(hk, c)


def test_driver_deterministic():
    rng = random.Random(9)
    g = oracles.random_labels(rng, oracles.random_connected(rng, 9, 0.3))
    assert recursion_driver(g, EMPTY) == recursion_driver(g, EMPTY)
