"""Recursion driver for finite labeled instances and its verification harness.

The driver colors ``G = V minus K`` one connected piece at a time, keeping
every already colored vertex fixed.  Per piece it builds a normal tree from
the root of least rank and follows the branch the rank calls for.  A closing
repair loop makes both guarantees hold on the finite window; its cut grows
with every flip, so it terminates.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .. import exact
from ..coloring import find_improving_flip, flip, flip_candidates, neighbor_split
from ..errors import ContractError
from ..graph import Graph, PartialColoring, check_vertices, components
from ..rank import decompose, graph_rank_min
from ..tree import dfs_normal_tree, up_closure
from .engine import run_engine
from .lemmas import repair_set, stitch
from .maxcut import greedy_trace, reoptimize


def recursion_driver(
    g_hat: Graph,
    k_frozen: PartialColoring,
    prefer: Mapping | None = None,
    cap: int = exact.DEFAULT_CAP,
    debug: bool = False,
) -> PartialColoring:
    """Total coloring extending ``k_frozen``, strongly maximal over the
    finite-labeled vertices of G and unfriendly at its infinite-labeled ones.

    Every vertex colored in ``k_frozen`` is treated as part of K.
    """
    check_vertices(g_hat, k_frozen.domain)
    g_part = frozenset(g_hat.vertices) - k_frozen.domain
    return drive_region(g_hat, k_frozen, g_part, prefer=prefer, cap=cap, debug=debug)


def drive_region(
    g: Graph,
    c: PartialColoring,
    region,
    prefer: Mapping | None = None,
    cap: int = exact.DEFAULT_CAP,
    debug: bool = False,
) -> PartialColoring:
    """Color the uncolored ``region`` without touching anything colored."""
    region = check_vertices(g, region)
    if region & c.domain:
        raise ContractError(f"vertex {min(region & c.domain)} of the region is already colored")
    prefer = prefer or {}
    for comp in components(g, region):
        c = _drive_connected(g, c, frozenset(comp), prefer, cap, debug)
    return c


def _drive_connected(g, c, comp, prefer, cap, debug):
    kinds = {g.labels[v] for v in comp}
    if len(kinds) == 1:
        if g.is_finite(min(comp)):
            c = reoptimize(g, c, comp, prefer=prefer, cap=cap)
        else:
            c = _greedy_region(g, c, comp, prefer)
    else:
        _, root = graph_rank_min(g, within=comp)
        t = dfs_normal_tree(g, root, comp)
        if g.is_finite(root):
            c = _finite_root(g, t, c, prefer, cap, debug)
        else:
            c = run_engine(g, t, c, prefer=prefer, cap=cap, debug=debug).stable.coloring
    return finalize(g, c, comp, cap=cap)


def _greedy_region(g, c, comp, prefer):
    start = dict(c.colors)
    start.update({v: prefer.get(v, 0) for v in comp})
    done, _ = greedy_trace(g, PartialColoring(start, c.frozen | c.domain))
    return c.updated({v: done[v] for v in comp})


def _finite_root(g, t, c, prefer, cap, debug):
    s = decompose(g, t).s  # minimal infinite-labeled vertices
    top = up_closure(t, s)
    below_s = [u for v in sorted(s) for u in t.children[v]]
    side = [u for v in sorted(top - s) for u in t.children[v] if u not in top]
    h_region = set(top)
    for u in side:
        h_region |= t.subtree(u)
    c = c.updated({v: prefer.get(v, 0) for v in h_region})
    for u in below_s:
        c = drive_region(g, c, t.subtree(u), prefer=prefer, cap=cap, debug=debug)

    x = [v for v in sorted(s) if _prefers_flip(g, c, v)]
    if x:
        inner = frozenset().union(*(t.subtree(v) - {v} for v in x))
        c = repair_set(g, c, frozenset(g.vertices) - inner, x, check=False)
    blocks = [t.subtree(v) - {v} for v in sorted(s)]
    return stitch(g, c, t.vertices, blocks, check=False)


def _prefers_flip(g, c, v):
    opp, same = neighbor_split(g, c, v)
    return opp < same


def finalize(g: Graph, c: PartialColoring, region, cap: int = exact.DEFAULT_CAP) -> PartialColoring:
    """Alternate exact re-solving of the finite vertices with single flips of
    infinite-labeled vertices that have more same-colored neighbors."""
    region = frozenset(region)
    while True:
        c = reoptimize(g, c, flip_candidates(g, c, region), cap=cap)
        bad = next(
            (v for v in sorted(region)
             if not g.is_finite(v) and v not in c.frozen and _prefers_flip(g, c, v)),
            None,
        )
        if bad is None:
            return c
        c = flip(c, [bad])


@dataclass
class TheoremReport:
    ok: bool
    strongly_maximal: bool
    flip_witness: list | None
    dtrans: int | None
    unfriendly: dict = field(default_factory=dict)
    non_unfriendly: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "strongly_maximal": self.strongly_maximal,
            "flip_witness": self.flip_witness,
            "dtrans": self.dtrans,
            "unfriendly": {str(v): self.unfriendly[v] for v in sorted(self.unfriendly)},
            "non_unfriendly": self.non_unfriendly,
        }


def verify_theorem(g_hat: Graph, c: PartialColoring, cap: int = exact.DEFAULT_CAP) -> TheoremReport:
    """Check both guarantees; frozen vertices count as K and are exempt."""
    if not c.is_total(g_hat.n):
        raise ContractError("verify_theorem needs a total coloring")
    found = find_improving_flip(g_hat, c, g_hat.vertices, cap=cap)
    witness = sorted(found[0]) if found else None
    delta = found[1] if found else None
    verdicts = {}
    for v in g_hat.vertices:
        if g_hat.is_finite(v) or v in c.frozen:
            continue
        opp, same = neighbor_split(g_hat, c, v)
        verdicts[v] = opp >= same
    bad = sorted(v for v, ok in verdicts.items() if not ok)
    sm = found is None
    return TheoremReport(sm and not bad, sm, witness, delta, verdicts, bad)
