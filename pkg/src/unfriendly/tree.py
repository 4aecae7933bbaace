"""Rooted spanning trees, their tree order, and depth-first normal trees.

``u <= v`` in the tree order means ``u`` lies on the path from the root to
``v``.  ``up_closure`` collects ancestors (everything below a vertex in the
order), ``down_closure`` collects descendants.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import InputError
from .graph import Graph, check_vertices, components


@dataclass(frozen=True)
class TreeOrder:
    root: int
    parent: Mapping
    depth: dict = field(init=False, compare=False, repr=False)
    children: dict = field(init=False, compare=False, repr=False)
    _tin: dict = field(init=False, compare=False, repr=False)
    _tout: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        parent = dict(self.parent)
        if parent.get(self.root, self.root) != self.root:
            raise InputError("the root must be its own parent")
        parent[self.root] = self.root
        object.__setattr__(self, "parent", parent)
        children = {v: [] for v in parent}
        for v, p in parent.items():
            if v == self.root:
                continue
            if p not in parent:
                raise InputError(f"parent {p} of vertex {v} is not in the tree")
            children[p].append(v)
        for kids in children.values():
            kids.sort()
        depth, tin, tout = {self.root: 0}, {}, {}
        clock = 0
        stack = [(self.root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                tout[v] = clock
                clock += 1
                continue
            tin[v] = clock
            clock += 1
            stack.append((v, True))
            for u in reversed(children[v]):
                depth[u] = depth[v] + 1
                stack.append((u, False))
        if len(tin) != len(parent):
            raise InputError("parent map does not form a tree rooted at the root")
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "children", {v: tuple(k) for v, k in children.items()})
        object.__setattr__(self, "_tin", tin)
        object.__setattr__(self, "_tout", tout)

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.parent)

    def leq(self, u: int, v: int) -> bool:
        """True iff ``u`` is an ancestor of ``v`` (or equal)."""
        return self._tin[u] <= self._tin[v] and self._tout[v] <= self._tout[u]

    def comparable(self, u: int, v: int) -> bool:
        return self.leq(u, v) or self.leq(v, u)

    def ancestors(self, v: int) -> list:
        """Path from ``v`` up to the root, ``v`` first."""
        out = [v]
        while v != self.root:
            v = self.parent[v]
            out.append(v)
        return out

    def subtree(self, v: int) -> frozenset:
        out, stack = [], [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return frozenset(out)

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "parent": {str(v): self.parent[v] for v in sorted(self.parent)},
        }

    @classmethod
    def from_dict(cls, doc) -> TreeOrder:
        try:
            return cls(int(doc["root"]), {int(k): int(p) for k, p in doc["parent"].items()})
        except (KeyError, TypeError, ValueError):
            raise InputError('tree JSON needs "root" and a "parent" map') from None


def dfs_normal_tree(g: Graph, root: int, within: Iterable[int] | None = None) -> TreeOrder:
    """Depth-first spanning tree of ``g[within]``, neighbors in ascending id."""
    pool = frozenset(g.vertices) if within is None else frozenset(within)
    if root not in pool:
        raise InputError(f"root {root} is not a vertex of the graph")
    parent = {root: root}
    stack = [(root, iter(sorted(g.adj[root] & pool)))]
    while stack:
        v, it = stack[-1]
        for u in it:
            if u not in parent:
                parent[u] = v
                stack.append((u, iter(sorted(g.adj[u] & pool))))
                break
        else:
            stack.pop()
    if len(parent) != len(pool):
        missing = min(pool - parent.keys())
        raise InputError(f"graph is disconnected: vertex {missing} is unreachable from {root}")
    return TreeOrder(root, parent)


def dfs_normal_forest(g: Graph) -> list:
    """One DFS tree per component, rooted at the component's least vertex."""
    return [dfs_normal_tree(g, comp[0], comp) for comp in components(g)]


def normality_violation(g: Graph, t: TreeOrder, within: Iterable[int] | None = None):
    """First edge (in sorted order) with incomparable endpoints, or None."""
    pool = t.vertices if within is None else frozenset(within)
    for u, v in sorted(g.edges):
        if u in pool and v in pool and not t.comparable(u, v):
            return (u, v)
    return None


def is_normal(g: Graph, t: TreeOrder) -> bool:
    return normality_violation(g, t) is None


def up_closure(t: TreeOrder, a: Iterable[int]) -> frozenset:
    out = set()
    for v in a:
        while v not in out:
            out.add(v)
            if v == t.root:
                break
            v = t.parent[v]
    return frozenset(out)


def down_closure(t: TreeOrder, a: Iterable[int]) -> frozenset:
    out = set()
    for v in a:
        if v not in out:
            out |= t.subtree(v)
    return frozenset(out)


def full_closure(t: TreeOrder, a: Iterable[int]) -> frozenset:
    return up_closure(t, a) | down_closure(t, a)


def is_antichain(t: TreeOrder, a: Iterable[int]) -> bool:
    a = sorted(set(a))
    return not any(t.comparable(u, v) for i, u in enumerate(a) for v in a[i + 1:])


def minimal_elements(t: TreeOrder, a: Iterable[int]) -> frozenset:
    a = frozenset(a)
    return frozenset(v for v in a if not any(u in a for u in t.ancestors(v)[1:]))


def successors(t: TreeOrder, v: int) -> frozenset:
    return frozenset(t.children[v])


def tree_path(t: TreeOrder, u: int, v: int) -> list:
    up_u = t.ancestors(u)
    up_v = t.ancestors(v)
    on_v = set(up_v)
    lca = next(x for x in up_u if x in on_v)
    left = up_u[: up_u.index(lca) + 1]
    right = up_v[: up_v.index(lca)]
    return left + right[::-1]


def check_in_tree(t: TreeOrder, g: Graph, a) -> frozenset:
    a = check_vertices(g, a)
    if not a <= t.vertices:
        raise InputError(f"vertex {min(a - t.vertices)} is not in the tree")
    return a
