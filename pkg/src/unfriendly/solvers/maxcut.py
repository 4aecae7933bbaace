"""Exact constrained max-cut and greedy unfriendly-partition search."""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .. import exact
from ..errors import ContractError
from ..graph import Graph, PartialColoring, check_vertices


def reoptimize(
    g: Graph,
    c: PartialColoring,
    free: Iterable[int],
    prefer: Mapping | None = None,
    cap: int = exact.DEFAULT_CAP,
) -> PartialColoring:
    """Re-solve ``free`` exactly given every other colored vertex.

    Works on partial colorings: uncolored vertices outside ``free`` are
    ignored.  By default ties keep the current colors of ``free``.
    """
    free = check_vertices(g, free)
    if not free:
        return c
    hit = free & c.frozen
    if hit:
        raise ContractError(f"vertex {min(hit)} is frozen")
    fixed = {v: x for v, x in c.colors.items() if v not in free}
    pref = c.colors if prefer is None else prefer
    best = exact.best_assignment(g, fixed, free, prefer=pref, cap=cap)
    return c.updated(best)


def oracle_maxcut(
    g: Graph,
    c0: PartialColoring,
    free: Iterable[int],
    cap: int = exact.DEFAULT_CAP,
    prefer: Mapping | None = None,
) -> PartialColoring:
    """Total coloring maximizing the cut, agreeing with ``c0`` off ``free``.

    Ties go to the lexicographically smallest color vector on ``free`` unless
    ``prefer`` names other preferred colors.
    """
    free = check_vertices(g, free)
    hit = free & c0.frozen
    if hit:
        raise ContractError(f"free vertex {min(hit)} is frozen")
    missing = set(g.vertices) - free - c0.domain
    if missing:
        raise ContractError(f"vertex {min(missing)} is neither free nor colored")
    return reoptimize(g, c0, free, prefer=prefer or {}, cap=cap)


def greedy_trace(g: Graph, c0: PartialColoring) -> tuple[PartialColoring, list]:
    """Greedy unfriendly search; returns the result and the flipped vertices in order.

    Each flip turns a vertex with more same-colored than opposite-colored
    (colored) neighbors, so the cut grows by at least one per flip.
    """
    col = dict(c0.colors)
    movable = sorted(v for v in col if v not in c0.frozen)
    flips = []
    while True:
        for v in movable:
            opp, same = _split(g, col, v)
            if opp < same:
                col[v] = 1 - col[v]
                flips.append(v)
                break
        else:
            return PartialColoring(col, c0.frozen), flips


def _split(g, col, v):
    opp = same = 0
    cv = col[v]
    for u in g.adj[v]:
        cu = col.get(u)
        if cu is None:
            continue
        if cu == cv:
            same += 1
        else:
            opp += 1
    return opp, same


def greedy_unfriendly(g: Graph, c0: PartialColoring) -> PartialColoring:
    return greedy_trace(g, c0)[0]
