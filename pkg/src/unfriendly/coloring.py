"""Cut algebra over (partial) 2-colorings.

Only edges with both endpoints colored are counted anywhere in this module.
Flip sets used for maximality questions consist of finite-labeled vertices
that are not frozen.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from . import exact
from .errors import CapacityError, ContractError, UndeterminedError
from .graph import Graph, PartialColoring, check_vertices, components

EXHAUSTIVE_LIMIT = 20
DEFAULT_FLIP_BOUND = 8


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def __bool__(self):
        return self is Verdict.TRUE


@dataclass(frozen=True)
class ClosenessWitness:
    diff: frozenset
    bound_region: frozenset


@dataclass(frozen=True)
class AlmostResult:
    verdict: Verdict
    witness: PartialColoring | None = None


def flip(c: PartialColoring, f: Iterable[int]) -> PartialColoring:
    f = frozenset(f)
    outside = f - c.domain
    if outside:
        raise ContractError(f"cannot flip uncolored vertex {min(outside)}")
    hit = f & c.frozen
    if hit:
        raise ContractError(f"cannot flip frozen vertex {min(hit)}")
    return c.updated({v: 1 - c[v] for v in f})


def trans_edges(g: Graph, c: PartialColoring) -> frozenset:
    col = c.colors
    return frozenset(
        (u, v) for u, v in g.edges if u in col and v in col and col[u] != col[v]
    )


def trans_at(g: Graph, c: PartialColoring, f: Iterable[int]) -> frozenset:
    f = check_vertices(g, f)
    col = c.colors
    return frozenset(
        (u, v)
        for u, v in g.edges
        if (u in f or v in f) and u in col and v in col and col[u] != col[v]
    )


def cut_size(g: Graph, c: PartialColoring) -> int:
    return len(trans_edges(g, c))


def dtrans(g: Graph, c: PartialColoring, f: Iterable[int]) -> int:
    """Cut edges lost minus cut edges gained when flipping ``f``."""
    f = check_vertices(g, f)
    if not f <= c.domain:
        raise ContractError("flip set must lie inside the coloring's domain")
    col = c.colors
    total = 0
    for v in f:
        for u in g.adj[v]:
            if u in f or u not in col:
                continue
            total += 1 if col[u] != col[v] else -1
    return total


def neighbor_split(g: Graph, c: PartialColoring, v: int) -> tuple[int, int]:
    """(opposite, same) counts over the colored neighbors of ``v``."""
    opp = same = 0
    cv = c.colors[v]
    for u in g.adj[v]:
        cu = c.colors.get(u)
        if cu is None:
            continue
        if cu == cv:
            same += 1
        else:
            opp += 1
    return opp, same


def is_unfriendly_at(g: Graph, c: PartialColoring, v: int) -> bool:
    check_vertices(g, [v])
    if v not in c.colors:
        raise UndeterminedError(f"vertex {v} is uncolored")
    missing = [u for u in g.adj[v] if u not in c.colors]
    if missing:
        raise UndeterminedError(f"neighbor {min(missing)} of vertex {v} is uncolored")
    opp, same = neighbor_split(g, c, v)
    return opp >= same


def flip_candidates(g: Graph, c: PartialColoring, a: Iterable[int]) -> frozenset:
    a = check_vertices(g, a)
    if not a <= c.domain:
        raise ContractError("region must lie inside the coloring's domain")
    return frozenset(v for v in a if g.is_finite(v) and v not in c.frozen)


def _component_dtrans_table(g, c, comp):
    """dtrans for every subset of ``comp`` (bit i <-> comp[i]), vectorized."""
    k = len(comp)
    masks = np.arange(1 << k, dtype=np.int64)
    bits = [(masks >> i) & 1 for i in range(k)]
    pos = {v: i for i, v in enumerate(comp)}
    col = c.colors
    table = np.zeros(1 << k, dtype=np.int64)
    for i, v in enumerate(comp):
        for u in g.adj[v]:
            if u in pos:
                j = pos[u]
                if j < i:
                    continue
                # both in comp: counted only when exactly one side flips
                sign = 1 if col[u] != col[v] else -1
                table += sign * (bits[i] ^ bits[j])
            elif u in col:
                sign = 1 if col[u] != col[v] else -1
                table += sign * bits[i]
    return table


def find_improving_flip(
    g: Graph, c: PartialColoring, a: Iterable[int], cap: int = exact.DEFAULT_CAP
) -> tuple[frozenset, int] | None:
    """A flip set inside the candidates of ``a`` with negative dtrans, or None.

    The returned set is the most improving one of its component (ties: the
    smallest bitmask for enumerated components, the distance to the preferred
    optimum otherwise).
    """
    cand = flip_candidates(g, c, a)
    for comp in components(g, cand):
        if len(comp) <= EXHAUSTIVE_LIMIT:
            table = _component_dtrans_table(g, c, comp)
            best = int(np.argmin(table))
            if table[best] < 0:
                f = frozenset(comp[i] for i in range(len(comp)) if best >> i & 1)
                return f, int(table[best])
        else:
            fixed = {v: col for v, col in c.colors.items() if v not in comp}
            try:
                opt = exact.best_assignment(g, fixed, comp, prefer=c.colors, cap=cap)
            except CapacityError:
                raise CapacityError(
                    f"strong-maximality check needs exact search on {len(comp)} vertices"
                ) from None
            f = frozenset(v for v in comp if opt[v] != c.colors[v])
            if f:
                d = dtrans(g, c, f)
                if d < 0:
                    return f, d
    return None


def is_strongly_maximal_in(g: Graph, c: PartialColoring, a: Iterable[int]) -> bool:
    return find_improving_flip(g, c, a) is None


def is_close(g: Graph, c: PartialColoring, c2: PartialColoring, a: Iterable[int]):
    """ClosenessWitness if ``c`` and ``c2`` are close in ``a``, else None."""
    a = frozenset(a)
    shared = c.domain & c2.domain
    diff = frozenset(v for v in shared if c[v] != c2[v])
    if diff <= a and all(g.is_finite(v) for v in diff):
        return ClosenessWitness(diff, a)
    return None


def is_almost_strongly_maximal_in(
    g: Graph,
    c: PartialColoring,
    a: Iterable[int],
    k: int = DEFAULT_FLIP_BOUND,
    cap: int = exact.DEFAULT_CAP,
) -> AlmostResult:
    """Search for a strongly maximal coloring in ``a`` that is close to ``c``.

    Per free component, flip sets of size up to ``k`` are tried first; past that
    the closest exact optimum is used.  Components too large for both routes
    make the answer UNKNOWN.
    """
    a = check_vertices(g, a)
    cand = flip_candidates(g, c, a)
    changes = {}
    unknown = False
    for comp in components(g, cand):
        fixed = {v: col for v, col in c.colors.items() if v not in comp}
        f = _small_witness(g, c, comp, k)
        if f is not None:
            changes.update({v: 1 - c[v] for v in f})
            continue
        try:
            opt = exact.best_assignment(g, fixed, comp, prefer=c.colors, cap=cap, closest=True)
        except CapacityError:
            unknown = True
            continue
        changes.update({v: x for v, x in opt.items() if x != c[v]})
    if unknown:
        return AlmostResult(Verdict.UNKNOWN)
    witness = c.updated(changes)
    if not is_strongly_maximal_in(g, witness, a):  # pragma: no cover - internal consistency
        raise ContractError("witness search produced a non-maximal coloring")
    return AlmostResult(Verdict.TRUE, witness)


def _small_witness(g, c, comp, k):
    """Smallest flip set F (size <= k) in ``comp`` leaving the component optimal."""
    if len(comp) > EXHAUSTIVE_LIMIT:
        return None
    # table[mask] = dtrans(c, mask); c*F is optimal iff dtrans(c, F) is minimal
    table = _component_dtrans_table(g, c, comp)
    target = table.min()
    if target == 0:
        return frozenset()
    masks = np.nonzero(table == target)[0]
    sizes = np.array([bin(int(m)).count("1") for m in masks])
    order = np.lexsort((masks, sizes))
    best = int(masks[order[0]])
    if sizes[order[0]] > k:
        return None
    return frozenset(comp[i] for i in range(len(comp)) if best >> i & 1)

