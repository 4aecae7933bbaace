"""Finite labeled graphs, vertex sets and partial 2-colorings.

Vertices are dense integers ``0..n-1``.  Every vertex carries a degree class
(finite or infinite) which is *metadata*: on a truncation of an infinite graph
the class records the degree in the limit graph, not in the finite window.

A vertex may also carry declared-infinite neighbor families (see
:class:`Family`).  They are produced by :func:`unfriendly.presentation.truncate`
and are the only source of "infinitely many" predicates used by the
stable-coloring engine.
"""

from __future__ import annotations

import enum
import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import FormatError, InputError

VertexSet = frozenset  # frozenset[int]


class DegreeClass(str, enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"


FINITE = DegreeClass.FINITE
INFINITE = DegreeClass.INFINITE


@dataclass(frozen=True)
class Family:
    """Visible window of an infinite set of neighbors of one vertex.

    ``members`` are the neighbors present in the truncation.  The unseen
    members behave like clones of ``tail`` hanging below ``anchor`` in the
    tree order: they count as inside a down-closed set iff ``anchor`` is, and
    inside any other set iff ``tail`` is.
    """

    members: frozenset
    tail: int
    anchor: int


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset
    labels: tuple = ()
    families: tuple = ()
    adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InputError("negative vertex count")
        canon = set()
        for e in self.edges:
            u, v = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge {(u, v)} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(canon))

        labels = tuple(DegreeClass(x) for x in self.labels) if self.labels else (FINITE,) * self.n
        if len(labels) != self.n:
            raise InputError(f"expected {self.n} labels, got {len(labels)}")
        object.__setattr__(self, "labels", labels)

        fams = tuple(tuple(f) for f in self.families) if self.families else ((),) * self.n
        if len(fams) != self.n:
            raise InputError(f"expected {self.n} family lists, got {len(fams)}")
        object.__setattr__(self, "families", fams)

        nbrs = [set() for _ in range(self.n)]
        for u, v in canon:
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))

        for v, fs in enumerate(fams):
            for f in fs:
                if not f.members <= self.adj[v]:
                    raise InputError(f"family of vertex {v} lists non-neighbors")
                if not (0 <= f.tail < self.n and 0 <= f.anchor < self.n):
                    raise InputError(f"family of vertex {v} has out-of-range tail/anchor")

    @classmethod
    def from_edges(cls, n, edges, infinite=()):
        infinite = set(infinite)
        labels = tuple(INFINITE if v in infinite else FINITE for v in range(n))
        return cls(n, frozenset(tuple(e) for e in edges), labels)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def is_finite(self, v: int) -> bool:
        return self.labels[v] is FINITE

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def with_labels(self, labels) -> Graph:
        return Graph(self.n, self.edges, tuple(labels), self.families)


def check_vertices(g: Graph, a: Iterable[int]) -> frozenset:
    a = frozenset(a)
    bad = [v for v in a if not (isinstance(v, int) and 0 <= v < g.n)]
    if bad:
        raise InputError(f"vertex {min(bad, key=str)} is outside 0..{g.n - 1}")
    return a


def neighborhood(g: Graph, a: Iterable[int]) -> frozenset:
    """Vertices outside ``a`` adjacent to some member of ``a``."""
    a = check_vertices(g, a)
    out = set()
    for v in a:
        out |= g.adj[v]
    return frozenset(out - a)


def subgraph(g: Graph, a: Iterable[int]) -> tuple[Graph, list]:
    """Induced subgraph relabeled densely; also returns new-id -> old-id."""
    a = check_vertices(g, a)
    old = sorted(a)
    new = {v: i for i, v in enumerate(old)}
    edges = frozenset((new[u], new[v]) for u, v in g.edges if u in a and v in a)
    labels = tuple(g.labels[v] for v in old)
    fams = []
    for v in old:
        kept = []
        for f in g.families[v]:
            members = f.members & a
            if members and f.tail in a and f.anchor in a:
                kept.append(Family(frozenset(new[m] for m in members), new[f.tail], new[f.anchor]))
        fams.append(tuple(kept))
    return Graph(len(old), edges, labels, tuple(fams)), old


def induced(g: Graph, a: Iterable[int]) -> Graph:
    return subgraph(g, a)[0]


def components(g: Graph, within: Iterable[int] | None = None) -> list:
    """Connected components of ``g[within]`` as sorted lists, ordered by least member."""
    pool = set(g.vertices if within is None else within)
    comps = []
    for s in sorted(pool):
        if s not in pool:
            continue
        pool.discard(s)
        stack, comp = [s], [s]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u in pool:
                    pool.discard(u)
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(components(g)) == 1


# --------------------------------------------------------------------------
# partial colorings


@dataclass(frozen=True, eq=True)
class PartialColoring:
    """Map from a vertex subset to {0, 1}; ``frozen`` vertices never change."""

    colors: Mapping
    frozen: frozenset = frozenset()

    def __post_init__(self):
        colors = {int(v): int(c) for v, c in dict(self.colors).items()}
        for v, c in colors.items():
            if c not in (0, 1):
                raise InputError(f"vertex {v} has color {c!r}; colors are 0 or 1")
        frozen = frozenset(self.frozen)
        if not frozen <= colors.keys():
            raise InputError(f"frozen vertices {sorted(frozen - colors.keys())} are uncolored")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "frozen", frozen)

    __hash__ = None

    @classmethod
    def total(cls, values, frozen=()):
        return cls(dict(enumerate(values)), frozenset(frozen))

    @property
    def domain(self) -> frozenset:
        return frozenset(self.colors)

    def __getitem__(self, v):
        return self.colors[v]

    def __contains__(self, v):
        return v in self.colors

    def get(self, v, default=None):
        return self.colors.get(v, default)

    def is_total(self, n: int) -> bool:
        return len(self.colors) == n and all(v in self.colors for v in range(n))

    def as_list(self, n: int) -> list:
        return [self.colors[v] for v in range(n)]

    def updated(self, changes: Mapping, frozen=None) -> PartialColoring:
        colors = dict(self.colors)
        colors.update(changes)
        return PartialColoring(colors, self.frozen if frozen is None else frozen)

    def restrict(self, a: Iterable[int]) -> PartialColoring:
        a = frozenset(a)
        return PartialColoring({v: c for v, c in self.colors.items() if v in a}, self.frozen & a)


# --------------------------------------------------------------------------
# JSON files


def _load_json(data, what):
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc.msg}", f"{what} line {exc.lineno} col {exc.colno}") from None


def _expect_int(x, loc):
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"expected an integer, got {x!r}", loc)
    return x


def graph_to_dict(g: Graph) -> dict:
    vertices = []
    for v in g.vertices:
        entry = {"id": v, "class": g.labels[v].value}
        if g.families[v]:
            entry["families"] = [
                {"members": sorted(f.members), "tail": f.tail, "anchor": f.anchor}
                for f in g.families[v]
            ]
        vertices.append(entry)
    return {"vertices": vertices, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_dict(doc) -> Graph:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise FormatError('expected an object with a "vertices" list', "$")
    raw = doc["vertices"]
    if not isinstance(raw, list):
        raise FormatError("expected a list", "vertices")
    n = len(raw)
    labels = [None] * n
    fams = [()] * n
    for i, entry in enumerate(raw):
        loc = f"vertices[{i}]"
        if not isinstance(entry, dict) or "id" not in entry:
            raise FormatError('expected an object with an "id"', loc)
        vid = _expect_int(entry["id"], loc + ".id")
        if not 0 <= vid < n:
            raise FormatError(f"id {vid} outside 0..{n - 1} (ids must be dense)", loc + ".id")
        if labels[vid] is not None:
            raise FormatError(f"duplicate id {vid}", loc + ".id")
        cls = entry.get("class", "finite")
        try:
            labels[vid] = DegreeClass(cls)
        except ValueError:
            raise FormatError(f"bad label {cls!r}; expected 'finite' or 'infinite'", loc + ".class") from None
        fl = []
        for j, f in enumerate(entry.get("families", [])):
            floc = f"{loc}.families[{j}]"
            try:
                members = frozenset(_expect_int(m, floc) for m in f["members"])
                fl.append(Family(members, _expect_int(f["tail"], floc), _expect_int(f["anchor"], floc)))
            except (KeyError, TypeError):
                raise FormatError("expected members/tail/anchor", floc) from None
        fams[vid] = tuple(fl)
    edges = set()
    for i, e in enumerate(doc.get("edges", [])):
        loc = f"edges[{i}]"
        if not isinstance(e, list) or len(e) != 2:
            raise FormatError("expected a pair [u, v]", loc)
        u, v = (_expect_int(x, loc) for x in e)
        if u == v:
            raise FormatError("self-loop", loc)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"endpoint outside 0..{n - 1}", loc)
        key = (min(u, v), max(u, v))
        if key in edges:
            raise FormatError(f"duplicate edge {list(key)}", loc)
        edges.add(key)
    try:
        return Graph(n, frozenset(edges), tuple(labels), tuple(fams))
    except InputError as exc:
        raise FormatError(str(exc), "vertices") from None


def dumps(doc) -> bytes:
    return (json.dumps(doc) + "\n").encode("utf-8")


def load_graph(data) -> Graph:
    return graph_from_dict(_load_json(data, "graph"))


def save_graph(g: Graph) -> bytes:
    return dumps(graph_to_dict(g))


def coloring_to_dict(c: PartialColoring) -> dict:
    return {
        "colors": {str(v): c.colors[v] for v in sorted(c.colors)},
        "frozen": sorted(c.frozen),
    }


def coloring_from_dict(doc) -> PartialColoring:
    if not isinstance(doc, dict) or not isinstance(doc.get("colors"), dict):
        raise FormatError('expected an object with a "colors" map', "$")
    colors = {}
    for k, c in doc["colors"].items():
        try:
            v = int(k)
        except ValueError:
            raise FormatError(f"vertex key {k!r} is not an integer", f"colors.{k}") from None
        if c not in (0, 1) or isinstance(c, bool):
            raise FormatError(f"color {c!r} is not 0 or 1", f"colors.{k}")
        colors[v] = c
    frozen = doc.get("frozen", [])
    if not isinstance(frozen, list):
        raise FormatError("expected a list", "frozen")
    frozen = [_expect_int(v, f"frozen[{i}]") for i, v in enumerate(frozen)]
    missing = set(frozen) - colors.keys()
    if missing:
        raise FormatError(f"frozen vertex {min(missing)} has no color", "frozen")
    return PartialColoring(colors, frozenset(frozen))


def load_coloring(data) -> PartialColoring:
    return coloring_from_dict(_load_json(data, "coloring"))


def save_coloring(c: PartialColoring) -> bytes:
    return dumps(coloring_to_dict(c))
