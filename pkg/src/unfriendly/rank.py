"""Tree rank over degree-class labels and the minimal-vertex decomposition.

A vertex has rank 0 when its down-closure carries a single degree class.
Otherwise its rank is the least k such that every strict descendant of the
opposite class has rank below k.  Finite trees never need limit ordinals, so
ranks are plain integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError, InputError
from .graph import FINITE, INFINITE, Graph, is_connected
from .tree import TreeOrder, dfs_normal_tree, down_closure, minimal_elements, normality_violation


@dataclass(frozen=True)
class RankTable:
    rank: dict
    tree: TreeOrder

    @property
    def root_rank(self) -> int:
        return self.rank[self.tree.root]


@dataclass(frozen=True)
class Decomposition:
    s: frozenset
    h: frozenset
    root_class: object


def rank_table(g: Graph, t: TreeOrder) -> RankTable:
    bad = normality_violation(g, t)
    if bad is not None:
        raise ContractError(f"tree is not normal: edge {bad} joins incomparable vertices")
    # per vertex: (has finite below, has infinite below, max rank of finite/infinite below)
    rank = {}
    summary = {}
    order = sorted(t.vertices, key=lambda v: -t.depth[v])
    for v in order:
        has = {FINITE: False, INFINITE: False}
        top = {FINITE: -1, INFINITE: -1}
        for u in t.children[v]:
            hu, tu = summary[u]
            for cls in (FINITE, INFINITE):
                has[cls] = has[cls] or hu[cls]
                top[cls] = max(top[cls], tu[cls])
        mine = g.labels[v]
        other = INFINITE if mine is FINITE else FINITE
        rank[v] = 0 if not has[other] else top[other] + 1
        has[mine] = True
        top[mine] = max(top[mine], rank[v])
        summary[v] = (has, top)
    return RankTable(rank, t)


def graph_rank(g: Graph, t: TreeOrder) -> int:
    return rank_table(g, t).root_rank


def graph_rank_min(g: Graph, within=None) -> tuple[int, int]:
    """Least root rank over DFS trees from every root; returns (rank, root).

    This searches only ascending-order DFS trees, so the value is an upper
    bound on the minimum over all normal spanning trees.
    """
    pool = sorted(g.vertices if within is None else within)
    if not pool:
        raise InputError("empty graph has no rank")
    if within is None and not is_connected(g):
        raise InputError("graph rank needs a connected graph")
    best = None
    for r in pool:
        k = graph_rank(g, dfs_normal_tree(g, r, pool))
        if best is None or k < best[0]:
            best = (k, r)
    return best


def decompose(g: Graph, t: TreeOrder) -> Decomposition:
    """S = minimal vertices of the class opposite to the root; H = V minus S's down-closure."""
    root_class = g.labels[t.root]
    other = INFINITE if root_class is FINITE else FINITE
    s = minimal_elements(t, (v for v in t.vertices if g.labels[v] is other))
    h = t.vertices - down_closure(t, s)
    if root_class is INFINITE:
        stray = [v for v in h if g.labels[v] is FINITE]
        if stray:
            raise ContractError(f"vertex {min(stray)} in H is finite-labeled")
    return Decomposition(s, h, root_class)


def rank_from_definition(g: Graph, t: TreeOrder) -> dict:
    """Stage-by-stage evaluation straight from the recursive definition.

    Kept separate from :func:`rank_table` and used as its test oracle: stage 0
    ranks homogeneous down-closures, stage k ranks every unranked vertex whose
    opposite-class strict descendants all already have rank below k.
    """
    verts = sorted(t.vertices)
    below = {v: [u for u in verts if u != v and t.leq(v, u)] for v in verts}
    rank = {}
    for v in verts:
        classes = {g.labels[u] for u in below[v]} | {g.labels[v]}
        if len(classes) == 1:
            rank[v] = 0
    k = 0
    while len(rank) < len(verts):
        k += 1
        if k > len(verts) + 1:
            raise ContractError("rank recursion did not terminate")
        for v in verts:
            if v in rank:
                continue
            opposite = [u for u in below[v] if g.labels[u] is not g.labels[v]]
            if all(u in rank and rank[u] < k for u in opposite):
                rank[v] = k
    return rank
