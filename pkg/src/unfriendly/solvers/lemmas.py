"""Executable versions of the repair, stitching and extension lemmas.

All procedures act on finite graphs, where "almost strongly maximal" is
witnessed by an explicit coloring.  Each returns that witness.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from itertools import combinations
from math import comb

from .. import exact
from ..coloring import (
    dtrans,
    find_improving_flip,
    flip,
    flip_candidates,
    is_strongly_maximal_in,
    is_unfriendly_at,
)
from ..errors import CapacityError, ContractError, InputError
from ..graph import Graph, PartialColoring, check_vertices, neighborhood
from ..tree import TreeOrder, down_closure, is_antichain
from .maxcut import reoptimize

MAX_FLIP_SIZE = 8
COMBINATION_BUDGET = 20_000


def _small_improving(g, c, cand, max_size, budget):
    cand = sorted(cand)
    for size in range(1, min(max_size, len(cand)) + 1):
        if comb(len(cand), size) > budget:
            return None
        for f in combinations(cand, size):
            if dtrans(g, c, f) < 0:
                return frozenset(f)
    return None


def improve_until_maximal(
    g: Graph,
    c: PartialColoring,
    region: Iterable[int],
    max_size: int = MAX_FLIP_SIZE,
    budget: int = COMBINATION_BUDGET,
) -> PartialColoring:
    """Apply improving flip sets inside ``region`` until none is left.

    Small sets are searched by increasing size; when that search comes up
    empty or gets too expensive, the most improving set from the exact check
    is used.  Every step grows the cut, so the loop terminates.
    """
    region = frozenset(region)
    while True:
        cand = flip_candidates(g, c, region)
        f = _small_improving(g, c, cand, max_size, budget)
        if f is None:
            found = find_improving_flip(g, c, region)
            if found is None:
                return c
            f = found[0]
        c = flip(c, f)


def _eligible(g, c, v):
    return g.is_finite(v) or not is_unfriendly_at(g, c, v)


def repair_flip(
    g: Graph, c: PartialColoring, d: Iterable[int], v: int, check: bool = True
) -> PartialColoring:
    """Flip ``v`` and restore strong maximality in the complement of ``d``."""
    d = check_vertices(g, d)
    if v not in d:
        raise ContractError(f"vertex {v} is not in D")
    region = frozenset(g.vertices) - d
    if check:
        if not c.is_total(g.n):
            raise ContractError("repair_flip needs a total coloring")
        if not _eligible(g, c, v):
            raise ContractError(f"vertex {v} is infinite-labeled and already unfriendly")
        if not is_strongly_maximal_in(g, c, region):
            raise ContractError("coloring is not strongly maximal outside D")
    return improve_until_maximal(g, flip(c, [v]), region)


def repair_set(
    g: Graph, c: PartialColoring, d: Iterable[int], s: Iterable[int], check: bool = True
) -> PartialColoring:
    """Flip every vertex of ``s`` in ascending order, repairing after each."""
    d = check_vertices(g, d)
    s = check_vertices(g, s)
    if not s <= d:
        raise ContractError("S must be a subset of D")
    if check:
        for v in sorted(s):
            if not _eligible(g, c, v):
                raise ContractError(f"vertex {v} is infinite-labeled and already unfriendly")
    for i, v in enumerate(sorted(s)):
        c = repair_flip(g, c, d, v, check=check and i == 0)
    return c


def _check_blocks(g, a, blocks):
    seen = set()
    for i, b in enumerate(blocks):
        if not b <= a:
            raise InputError(f"block {i} is not inside A")
        if b & seen:
            raise InputError(f"block {i} overlaps an earlier block")
        seen |= b
    owner = {v: i for i, b in enumerate(blocks) for v in b}
    for u, v in sorted(g.edges):
        if u in owner and v in owner and owner[u] != owner[v]:
            raise InputError(f"edge {(u, v)} joins blocks {owner[u]} and {owner[v]}")


def stitch(
    g: Graph,
    c_tilde: PartialColoring,
    a: Iterable[int],
    blocks: list,
    check: bool = True,
) -> PartialColoring:
    """Strongly maximal coloring in ``a`` that changes only finite vertices of ``a``.

    Blocks must be pairwise disjoint, pairwise non-adjacent subsets of ``a``.
    The result is the exact optimum over the free finite vertices of ``a``,
    preferring the colors of ``c_tilde``, so blocks that are already optimal
    stay untouched.
    """
    a = check_vertices(g, a)
    blocks = [check_vertices(g, b) for b in blocks]
    _check_blocks(g, a, blocks)
    if check:
        for i, b in enumerate(blocks):
            if not is_strongly_maximal_in(g, c_tilde, b):
                raise ContractError(f"c_tilde is not strongly maximal in block {i}")
    return reoptimize(g, c_tilde, flip_candidates(g, c_tilde, a))


def grow_domain(
    g: Graph,
    c: PartialColoring,
    a_small: Iterable[int],
    a_big: Iterable[int],
    mode: str = "extend",
    extension: Mapping | None = None,
) -> PartialColoring:
    """Witness that ``c`` is almost strongly maximal in a larger region.

    ``mode="extend"``: ``c`` is strongly maximal in ``a_small`` and the witness
    is strongly maximal in ``a_big``.

    ``mode="complete"``: ``c`` is defined on ``a_small`` (its whole domain), the
    rest of ``a_big`` is finite-labeled; ``c`` is extended (by ``extension``,
    default color 0) and the witness is strongly maximal in ``a_small``.
    """
    a_small = check_vertices(g, a_small)
    a_big = check_vertices(g, a_big)
    if not a_small <= a_big:
        raise ContractError("a_small must be contained in a_big")
    if mode == "extend":
        if not is_strongly_maximal_in(g, c, a_small):
            raise ContractError("coloring is not strongly maximal in a_small")
        return stitch(g, c, a_big, [a_small], check=False)
    if mode == "complete":
        if c.domain != a_small:
            raise ContractError("complete mode needs a_small to be the coloring's domain")
        rest = a_big - a_small
        if any(not g.is_finite(v) for v in rest):
            raise ContractError("uncolored vertices must all be finite-labeled")
        if not is_strongly_maximal_in(g, c, a_small):
            raise ContractError("coloring is not strongly maximal in its domain")
        extension = extension or {}
        full = c.updated({v: extension.get(v, 0) for v in rest})
        core = a_small - neighborhood(g, rest)
        return stitch(g, full, a_small, [core], check=False)
    raise InputError(f"unknown mode {mode!r}")


def _opposite_majority(g, colors, v, default=0):
    ones = sum(1 for u in g.adj[v] if colors.get(u) == 1)
    zeros = sum(1 for u in g.adj[v] if colors.get(u) == 0)
    if ones == zeros:
        return default
    return 0 if ones > zeros else 1


def solve_piece(
    g: Graph,
    c: PartialColoring,
    piece: Iterable[int],
    prefer: Mapping | None = None,
    cap: int = exact.DEFAULT_CAP,
) -> PartialColoring:
    """Color an uncolored piece, strongly maximal in it and unfriendly at its
    infinite vertices with respect to the colored context.

    Small or forest pieces are solved exactly over all their vertices;
    otherwise the piece goes through the recursion driver, which never
    touches the colored context.
    """
    piece = check_vertices(g, piece)
    prefer = prefer or {}
    try:
        return reoptimize(g, c, piece, prefer=prefer, cap=cap)
    except CapacityError:
        pass
    from .driver import drive_region

    return drive_region(g, c, piece, prefer=prefer, cap=cap)


def extend_subtrees(
    g: Graph,
    t: TreeOrder,
    c_prime: PartialColoring,
    x: Iterable[int],
    prefer: Mapping | None = None,
    cap: int = exact.DEFAULT_CAP,
) -> PartialColoring:
    """Extend ``c_prime`` to the down-closure of the antichain ``x``.

    For each root ``v`` in ``x``: pick a color for ``v``, solve every child
    subtree against the colored context, then re-optimize the finite vertices
    of the whole subtree.  Distinct subtrees are non-adjacent in a normal tree,
    so they are handled independently.
    """
    x = check_vertices(g, x)
    if not is_antichain(t, x):
        raise InputError("x is not an antichain")
    region = down_closure(t, x)
    if region & c_prime.domain:
        raise InputError("the down-closure of x meets the coloring's domain")
    prefer = prefer or {}
    c = c_prime
    for v in sorted(x):
        c = c.updated({v: prefer.get(v, _opposite_majority(g, c.colors, v))})
        for u in t.children[v]:
            c = solve_piece(g, c, t.subtree(u), prefer=prefer, cap=cap)
        sub = t.subtree(v)
        c = reoptimize(g, c, flip_candidates(g, c, sub), cap=cap)
    return c


def reoptimize_subtrees(
    g: Graph,
    t: TreeOrder,
    c: PartialColoring,
    roots: Iterable[int],
    touched: Iterable[int] | None = None,
    cap: int = exact.DEFAULT_CAP,
) -> PartialColoring:
    """Re-solve the finite vertices under each root that has a neighbor in ``touched``."""
    touched = None if touched is None else frozenset(touched)
    for v in sorted(roots):
        sub = t.subtree(v)
        if touched is not None and not (neighborhood(g, sub) & touched):
            continue
        c = reoptimize(g, c, flip_candidates(g, c, sub), cap=cap)
    return c


def fix_stable(g: Graph, t: TreeOrder, sc, c_prime: PartialColoring, cap: int = exact.DEFAULT_CAP):
    """Restore strong maximality under every root of ``sc.x_part`` after an extension.

    Only subtrees with a neighbor among the newly colored vertices change, and
    only at their finite vertices.
    """
    old = sc.coloring
    if not old.domain <= c_prime.domain or any(c_prime[v] != old[v] for v in old.domain):
        raise ContractError("c_prime does not extend the stable coloring")
    new = c_prime.domain - old.domain
    return reoptimize_subtrees(g, t, c_prime, sc.x_part, touched=new, cap=cap)
