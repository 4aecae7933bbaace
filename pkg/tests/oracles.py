"""Brute-force reference implementations used as test oracles.

Nothing here imports the package's solvers: every check is a direct
enumeration of the defining condition.
"""

from __future__ import annotations

import itertools
import random

import networkx as nx
import numpy as np

from unfriendly.graph import FINITE, INFINITE, Graph


def cut(edges, colors) -> int:
    return sum(1 for u, v in edges if colors[u] != colors[v])


def max_cut(g: Graph, fixed=None) -> int:
    """Largest cut over all colorings agreeing with ``fixed``."""
    fixed = fixed or {}
    free = [v for v in range(g.n) if v not in fixed]
    best = -1
    for bits in itertools.product((0, 1), repeat=len(free)):
        col = dict(fixed)
        col.update(zip(free, bits))
        best = max(best, cut(g.edges, col))
    return best


def dtrans_direct(g: Graph, colors: dict, f) -> int:
    """|trans(c)| - |trans(c*F)| over edges with both ends colored."""
    f = set(f)
    flipped = {v: (1 - x if v in f else x) for v, x in colors.items()}
    es = [(u, v) for u, v in g.edges if u in colors and v in colors]
    return cut(es, colors) - cut(es, flipped)


def improving_flip(g: Graph, colors: dict, cand, max_size=None):
    """Some subset of ``cand`` (size <= max_size) with negative dtrans, or None."""
    cand = sorted(cand)
    top = len(cand) if max_size is None else min(max_size, len(cand))
    for k in range(1, top + 1):
        for f in itertools.combinations(cand, k):
            if dtrans_direct(g, colors, f) < 0:
                return set(f)
    return None


def maximal_over(g: Graph, colors: dict, cand) -> bool:
    """True iff no recoloring of ``cand`` (all 2^k at once) beats the current cut."""
    cand = sorted(cand)
    if not cand:
        return True
    masks = np.arange(1 << len(cand), dtype=np.int64)
    col = {v: np.full(masks.shape, colors[v], dtype=np.int64) for v in colors}
    for i, v in enumerate(cand):
        col[v] = colors[v] ^ ((masks >> i) & 1)
    cuts = np.zeros(masks.shape, dtype=np.int64)
    for u, v in g.edges:
        if u in colors and v in colors:
            cuts += col[u] != col[v]
    return bool(cuts.max() == cuts[0])


def unfriendly_at(g: Graph, colors: dict, v: int) -> bool:
    opp = sum(1 for u in g.adj[v] if colors[u] != colors[v])
    return 2 * opp >= len(g.adj[v])


# --------------------------------------------------------------------------
# rank straight from the definition


def rank_by_definition(g: Graph, parent: dict, root: int) -> dict:
    """rank(v) = 0 if the subtree of v is label-homogeneous, otherwise the
    least k exceeding the rank of every opposite-class strict descendant."""
    children = {v: [] for v in range(g.n)}
    for v, p in parent.items():
        if v != root:
            children[p].append(v)

    def below(v):
        out, stack = [], [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(children[x])
        return out

    memo = {}

    def rank(v):
        if v in memo:
            return memo[v]
        sub = below(v)
        if len({g.labels[x] for x in sub}) == 1:
            r = 0
        else:
            r = 1 + max(rank(x) for x in sub if x != v and g.labels[x] != g.labels[v])
        memo[v] = r
        return r

    return {v: rank(v) for v in range(g.n)}


# --------------------------------------------------------------------------
# lassos in labeled digraphs


def has_alternating_lasso(nodes: dict, arcs, start) -> bool:
    """Search the product of the digraph with the two "seen" bits.

    A reachable cycle through both labels exists iff some reachable node x
    can return to itself along a walk that meets both labels; walks are
    enumerated as states (node, saw_finite, saw_infinite).
    """
    succ = {x: set() for x in nodes}
    for a, b in arcs:
        succ[a].add(b)
    reach, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in succ[x]:
            if y not in reach:
                reach.add(y)
                stack.append(y)
    for x in reach:
        init = (x, nodes[x] == FINITE, nodes[x] == INFINITE)
        seen, stack = {init}, [init]
        while stack:
            y, sf, si = stack.pop()
            for z in succ[y]:
                st = (z, sf or nodes[z] == FINITE, si or nodes[z] == INFINITE)
                if z == x and st[1] and st[2]:
                    return True
                if st not in seen:
                    seen.add(st)
                    stack.append(st)
    return False


# --------------------------------------------------------------------------
# corpora


def from_nx(h, infinite=()) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), list(h.edges()), infinite)


def atlas(max_n: int, connected=True):
    """All graphs of the networkx atlas with 1..max_n vertices (max_n <= 7)."""
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() > max_n:
            break
        if connected and not nx.is_connected(h):
            continue
        yield from_nx(h)


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    """Random spanning tree plus independent extra edges."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, edges)


def random_labels(rng: random.Random, g: Graph) -> Graph:
    return g.with_labels([rng.choice((FINITE, INFINITE)) for _ in range(g.n)])
