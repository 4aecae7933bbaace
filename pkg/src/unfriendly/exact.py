"""Exact constrained max-cut over a free vertex set.

Maximizes the number of cut edges among vertices that are either free or
already colored, keeping the colored ones fixed.  Edges touching an uncolored,
non-free vertex are ignored, which is the partial-coloring convention used
throughout the package.

The free set is split into connected components of ``g[free]``; components
are independent once the fixed context is known.  Forest components are solved
by tree dynamic programming (any size); the rest by branch-and-bound, capped
at ``cap`` vertices.

Ties are broken deterministically: vertices are decided in ascending id, each
trying its preferred color first (``prefer``, default 0).  With ``prefer``
empty this is the lexicographically smallest optimal color vector.
"""

from __future__ import annotations

import sys
from collections.abc import Iterable, Mapping

from .errors import CapacityError
from .graph import Graph, components

DEFAULT_CAP = 24


def best_assignment(
    g: Graph,
    fixed: Mapping,
    free: Iterable[int],
    prefer: Mapping | None = None,
    cap: int = DEFAULT_CAP,
    closest: bool = False,
) -> dict:
    """Optimal colors for ``free`` given the colored context ``fixed``.

    With ``closest`` set, among all optimal assignments the one with the
    fewest deviations from ``prefer`` is returned.
    """
    free = frozenset(free)
    prefer = prefer or {}
    out = {}
    for comp in components(g, free):
        out.update(_solve_component(g, fixed, comp, prefer, cap, closest))
    return out


def _solve_component(g, fixed, comp, prefer, cap, closest):
    m = len(comp)
    pos = {v: i for i, v in enumerate(comp)}
    weight = m + 1 if closest else 1
    unary = []
    nbrs = [[] for _ in range(m)]
    n_edges = 0
    for i, v in enumerate(comp):
        a = [0, 0]
        for u in g.adj[v]:
            if u in pos:
                if pos[u] > i:
                    nbrs[i].append(pos[u])
                    nbrs[pos[u]].append(i)
                    n_edges += 1
            elif u in fixed:
                a[1 - fixed[u]] += weight
        if closest:
            a[1 - prefer.get(v, 0)] -= 1
        unary.append(a)
    pref = [prefer.get(v, 0) for v in comp]

    if n_edges == m - 1:
        x = _forest_solve(m, nbrs, unary, weight, pref)
    elif m <= cap:
        x = _branch_and_bound(m, nbrs, unary, weight, pref)
    else:
        raise CapacityError(
            f"free component of {m} vertices (not a forest) exceeds the exact-search cap {cap}"
        )
    return {v: x[i] for i, v in enumerate(comp)}


def _forest_value(m, nbrs, unary, weight, allowed):
    """Optimum of a tree component with per-vertex allowed colors."""
    order, parent = [0], [-1] * m
    seen = [False] * m
    seen[0] = True
    for v in order:
        for u in nbrs[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                order.append(u)
    dp = [[0, 0] for _ in range(m)]
    neg = -sys.maxsize
    for v in reversed(order):
        for c in (0, 1):
            if c not in allowed[v]:
                dp[v][c] = neg
                continue
            total = unary[v][c]
            for u in nbrs[v]:
                if u != parent[v]:
                    total += max(dp[u][c], dp[u][1 - c] + weight)
            dp[v][c] = total
    return max(dp[0])


def _forest_solve(m, nbrs, unary, weight, pref):
    allowed = [(0, 1)] * m
    opt = _forest_value(m, nbrs, unary, weight, allowed)
    x = []
    for i in range(m):
        allowed[i] = (pref[i],)
        if _forest_value(m, nbrs, unary, weight, allowed) == opt:
            x.append(pref[i])
        else:
            allowed[i] = (1 - pref[i],)
            x.append(1 - pref[i])
    return x


def _assignment_value(m, nbrs, unary, weight, x):
    val = sum(unary[i][x[i]] for i in range(m))
    for i in range(m):
        for j in nbrs[i]:
            if j > i and x[i] != x[j]:
                val += weight
    return val


def _branch_and_bound(m, nbrs, unary, weight, pref):
    # Incumbent from single-flip local search on the preferred assignment;
    # kept one below its value so the first optimum in search order still wins.
    x = list(pref)
    improved = True
    while improved:
        improved = False
        for i in range(m):
            c = x[i]
            delta = unary[i][1 - c] - unary[i][c]
            for j in nbrs[i]:
                delta += weight if x[j] == c else -weight
            if delta > 0:
                x[i] = 1 - c
                improved = True
    best = [_assignment_value(m, nbrs, unary, weight, x) - 1]
    best_x = [None]

    gain = [list(u) for u in unary]
    remaining = [weight * sum(len(nb) for nb in nbrs) // 2]
    assign = [-1] * m
    symmetric = all(u[0] == u[1] for u in unary)

    def bound(i, value):
        b = value + remaining[0]
        for k in range(i, m):
            b += max(gain[k])
        return b

    def rec(i, value):
        if i == m:
            if value > best[0]:
                best[0] = value
                best_x[0] = list(assign)
            return
        if bound(i, value) <= best[0]:
            return
        choices = (pref[i],) if (i == 0 and symmetric) else (pref[i], 1 - pref[i])
        for c in choices:
            assign[i] = c
            later = [j for j in nbrs[i] if j > i]
            for j in later:
                gain[j][1 - c] += weight
            remaining[0] -= weight * len(later)
            rec(i + 1, value + gain[i][c])
            for j in later:
                gain[j][1 - c] -= weight
            remaining[0] += weight * len(later)
        assign[i] = -1

    rec(0, 0)
    return best_x[0]
