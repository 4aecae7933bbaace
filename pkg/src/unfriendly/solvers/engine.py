"""Stable partial colorings and the case engine for infinite-labeled roots.

The engine grows a stable coloring one case at a time.  "Infinitely many"
is never read off a finite count: it comes from the declared families on the
graph (see :class:`unfriendly.graph.Family`).  On a plain finite graph no
family exists, the infinite conditions never fire, and the engine absorbs the
tree bottom-up through the ``w`` below which everything is colored.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .. import exact
from ..coloring import flip, flip_candidates, is_strongly_maximal_in, neighbor_split
from ..errors import ContractError, EngineInvariantError, EngineStall
from ..graph import Graph, PartialColoring, neighborhood
from ..rank import decompose
from ..tree import TreeOrder, down_closure, is_antichain
from .lemmas import _opposite_majority, extend_subtrees, reoptimize_subtrees
from .maxcut import greedy_trace, reoptimize

CASE_TAGS = ("case1", "case2", "case3", "case4", "case5", "complete")


@dataclass(frozen=True)
class StableColoring:
    coloring: PartialColoring
    h_part: frozenset
    x_part: frozenset
    tree: TreeOrder

    @property
    def domain(self) -> frozenset:
        """Colored tree vertices (context vertices outside the tree excluded)."""
        return self.coloring.domain & self.tree.vertices

    @property
    def x_closure(self) -> frozenset:
        return down_closure(self.tree, self.x_part)


@dataclass(frozen=True)
class EngineState:
    stage: int
    stable: StableColoring
    history: tuple = ()
    # absorbed vertex -> True if a declared family of opposite color backs it
    certificates: dict = field(default_factory=dict)


# declared-infinite predicates


def infinite_below(g: Graph, t: TreeOrder, w: int, v: int) -> bool:
    """N(w) meets the down-closure of ``v`` in infinitely many vertices."""
    return any(f.anchor in t.parent and t.leq(v, f.anchor) for f in g.families[w])


def infinite_in(g: Graph, w: int, a) -> bool:
    return any(f.tail in a for f in g.families[w])


def infinite_successors(g: Graph, w: int, targets) -> bool:
    """``w`` has infinitely many successors inside ``targets``."""
    return any(f.anchor == w and f.tail in targets for f in g.families[w])


def regular_core(g: Graph, h) -> frozenset:
    """Largest subset C of ``h`` where every vertex has infinitely many neighbors in C."""
    core = set(h)
    changed = True
    while changed:
        changed = False
        for w in sorted(core):
            if not infinite_in(g, w, core):
                core.discard(w)
                changed = True
    return frozenset(core)


# invariant checks


def check_s1(g: Graph, sc: StableColoring, h: frozenset) -> str | None:
    t = sc.tree
    if not sc.h_part <= h:
        return f"S1: vertex {min(sc.h_part - h)} of H_c is not in H"
    if not is_antichain(t, sc.x_part):
        return "S1: X_c is not an antichain"
    below = sc.x_closure
    if sc.h_part & below:
        return f"S1: vertex {min(sc.h_part & below)} is in both H_c and the closure of X_c"
    if sc.h_part | below != sc.domain:
        return "S1: domain differs from H_c plus the closure of X_c"
    loose = [v for v in sc.h_part if g.is_finite(v)]
    if loose:
        return f"S1: finite-labeled vertex {min(loose)} lies outside the closure of X_c"
    return None


def check_s2(g: Graph, sc: StableColoring) -> str | None:
    if not is_strongly_maximal_in(g, sc.coloring, sc.x_closure):
        return "S2: coloring is not strongly maximal in the closure of X_c"
    return None


def check_s3(g: Graph, sc: StableColoring) -> str | None:
    t = sc.tree
    outside = t.vertices - sc.domain
    for w in sorted(outside):
        for v in sorted(sc.x_part):
            if infinite_below(g, t, w, v):
                return f"S3: uncolored vertex {w} has infinitely many neighbors below {v}"
    return None


def check_stable(g: Graph, sc: StableColoring, h: frozenset) -> None:
    for problem in (check_s1(g, sc, h), check_s2(g, sc), check_s3(g, sc)):
        if problem:
            raise EngineInvariantError(problem)


# engine


def initial_state(
    g: Graph, t: TreeOrder, c: PartialColoring, prefer: Mapping | None = None, debug: bool = True
) -> EngineState:
    """Greedy unfriendly coloring of the regular core of H, all else uncolored."""
    dec = _decomposition(g, t)
    prefer = prefer or {}
    if c.domain & t.vertices:
        raise ContractError("tree vertices must start uncolored")
    h0 = regular_core(g, dec.h)
    start = dict(c.colors)
    start.update({v: prefer.get(v, 0) for v in h0})
    done, _ = greedy_trace(g, PartialColoring(start, c.frozen | c.domain))
    coloring = PartialColoring(done.colors, c.frozen)
    state = EngineState(0, StableColoring(coloring, h0, frozenset(), t), ("init",), {})
    if debug:
        check_stable(g, state.stable, dec.h)
    return state


def _decomposition(g, t):
    if g.is_finite(t.root):
        raise ContractError("the case engine needs an infinite-labeled root")
    return decompose(g, t)


def find_case(g: Graph, t: TreeOrder, state: EngineState, cases=CASE_TAGS):
    """First applicable case as (tag, w, plan) or None.  Cases are tried in
    order, each with candidate vertices in ascending id; ``cases`` restricts
    which tags may fire."""
    found = _find_case(g, t, state, frozenset(cases))
    return next(found, None)


def _find_case(g, t, state, cases):
    dec = _decomposition(g, t)
    s, h = dec.s, dec.h
    d = state.stable.domain
    free_h = sorted(h - d)
    free_s = sorted(s - d)

    if "case1" in cases:
        for w in free_h:
            if infinite_successors(g, w, s - d):
                yield "case1", w, frozenset(u for u in t.children[w] if u in s and u not in d)
    if "case2" in cases:
        for w in free_h:
            for v in free_s:
                if infinite_below(g, t, w, v):
                    yield "case2", w, v
    if "case3" in cases:
        for w in free_h:
            if (t.subtree(w) - {w}) & h <= d:
                yield "case3", w, w
    if "case4" in cases:
        for w in free_h:
            if infinite_in(g, w, h & d):
                yield "case4", w, None
    if "case5" in cases:
        for w in free_h:
            for u in t.children[w]:
                if t.subtree(u) <= d and infinite_below(g, t, w, u):
                    yield "case5", w, u
    if "complete" in cases:
        for v in free_s:
            if all(a in d for a in t.ancestors(v)[1:]):
                yield "complete", v, v


def case_step(
    g: Graph,
    t: TreeOrder,
    state: EngineState,
    prefer: Mapping | None = None,
    cap: int = exact.DEFAULT_CAP,
    debug: bool = True,
    cases=CASE_TAGS,
):
    """Apply the first applicable case; returns the new state or "halt"."""
    dec = _decomposition(g, t)
    if debug:
        check_stable(g, state.stable, dec.h)
    found = find_case(g, t, state, cases)
    if found is None:
        return "halt"
    tag, w, plan = found
    prefer = prefer or {}
    sc = state.stable
    d = sc.domain
    free_h = dec.h - d

    fixed_color = {}
    if tag == "case1":
        x_new = plan
        ext = neighborhood(g, down_closure(t, x_new)) & t.vertices
        new_h = (ext - d) | {y for y in free_h if any(infinite_below(g, t, y, x) for x in x_new)}
        s_roots, fresh_x = x_new, frozenset()
    elif tag == "case2":
        x_new = frozenset([plan])
        new_h = frozenset(y for y in free_h if infinite_below(g, t, y, plan))
        s_roots, fresh_x = x_new, frozenset()
    elif tag == "case3":
        x_new = frozenset([w])
        new_h = frozenset(y for y in free_h if y != w and infinite_below(g, t, y, w))
        s_roots = (dec.s & t.subtree(w)) - d
        fresh_x = frozenset([w])
    elif tag == "case4":
        x_new = frozenset()
        new_h = frozenset([w])
        s_roots, fresh_x = frozenset(), frozenset()
        tail = min(f.tail for f in g.families[w] if f.tail in dec.h & d)
        fixed_color[w] = 1 - sc.coloring[tail]
    elif tag == "case5":
        x_new = frozenset([plan])
        new_h = frozenset(y for y in free_h if infinite_below(g, t, y, plan))
        s_roots, fresh_x = frozenset(), frozenset()
    else:
        x_new = frozenset([plan])
        new_h = frozenset()
        s_roots, fresh_x = x_new, frozenset()

    new_below = down_closure(t, x_new)
    x_next = frozenset(x for x in sc.x_part if x not in new_below) | x_new
    h_next = (sc.h_part - new_below) | new_h

    c = sc.coloring
    fresh = sorted(new_h | fresh_x)
    for y in fresh:
        if y in fixed_color:
            col = fixed_color[y]
        else:
            col = prefer.get(y, _opposite_majority(g, c.colors, y))
        c = c.updated({y: col})
    if s_roots:
        c = extend_subtrees(g, t, c, s_roots, prefer=prefer, cap=cap)
    added = c.domain - sc.coloring.domain

    movable = [y for y in fresh if y not in fixed_color]
    while True:
        c = reoptimize(g, c, flip_candidates(g, c, new_below), cap=cap)
        c = reoptimize_subtrees(g, t, c, x_next - x_new, touched=added, cap=cap)
        bad = next((y for y in movable if _prefers_flip(g, c, y)), None)
        if bad is None:
            break
        c = flip(c, [bad])

    certs = dict(state.certificates)
    for y in fresh:
        certs[y] = _certified(g, c, y, new_below, dec.h & d)

    new_state = EngineState(
        state.stage + 1,
        StableColoring(c, h_next, x_next, t),
        state.history + (tag,),
        certs,
    )
    _check_persistence(g, sc, new_state.stable)
    if new_state.stable.domain <= d:
        raise EngineInvariantError(f"{tag} at vertex {w} did not grow the domain")
    if debug:
        check_stable(g, new_state.stable, dec.h)
    return new_state


def _prefers_flip(g, c, v):
    opp, same = neighbor_split(g, c, v)
    return opp < same


def _certified(g, c, y, region, h_colored):
    """Some declared family of ``y`` sits in ``region`` (or in colored H) with
    its tail, hence all its clones, on the opposite color."""
    for f in g.families[y]:
        if f.tail not in c.colors or c[f.tail] == c[y]:
            continue
        if f.tail in region or f.anchor in region or f.tail in h_colored:
            return True
    return False


def _check_persistence(g, old: StableColoring, new: StableColoring):
    for v in sorted(old.coloring.domain):
        if not g.is_finite(v) and new.coloring.colors.get(v) != old.coloring[v]:
            raise EngineInvariantError(f"infinite-labeled vertex {v} changed color")
        if v not in new.coloring.colors:
            raise EngineInvariantError(f"vertex {v} left the domain")


def witness_chain(g: Graph, t: TreeOrder, state: EngineState) -> list:
    """Follow the w/u chain from an uncolored vertex of H when the engine stalls.

    Each link is (w, u, x): ``w`` in H outside the domain, ``u`` a successor
    of ``w`` with infinitely many neighbors of ``w`` below it and uncolored
    vertices left below, and ``x`` the next uncolored vertex of H below ``u``.
    A long chain is an alternating-ray candidate.
    """
    dec = decompose(g, t)
    d = state.stable.domain
    free_h = dec.h - d
    chain = []
    w = min(free_h) if free_h else None
    seen = set()
    while w is not None and w not in seen:
        seen.add(w)
        u = next(
            (u for u in t.children[w] if infinite_below(g, t, w, u) and t.subtree(u) - d),
            None,
        )
        if u is None:
            chain.append((w, None, None))
            break
        below = sorted(free_h & t.subtree(u), key=lambda y: (t.depth[y], y))
        x = below[0] if below else None
        chain.append((w, u, x))
        w = x
    return chain


def run_engine(
    g: Graph,
    t: TreeOrder,
    c: PartialColoring,
    prefer: Mapping | None = None,
    cap: int = exact.DEFAULT_CAP,
    debug: bool = True,
    max_steps: int | None = None,
) -> EngineState:
    """Run cases from the initial state until none applies."""
    state = initial_state(g, t, c, prefer, debug)
    limit = max_steps if max_steps is not None else 2 * len(t.vertices) + 2
    for _ in range(limit):
        nxt = case_step(g, t, state, prefer=prefer, cap=cap, debug=debug)
        if nxt == "halt":
            break
        state = nxt
    uncovered = t.vertices - state.stable.domain
    if uncovered:
        chain = witness_chain(g, t, state)
        raise EngineStall(
            f"engine stopped with {len(uncovered)} uncolored vertices (least {min(uncovered)})",
            chain,
        )
    return state
