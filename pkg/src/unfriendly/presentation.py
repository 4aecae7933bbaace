"""Finitely presented countable graphs and alternating-ray detection.

A presentation is a labeled quotient digraph.  Each node is either a single
vertex shared by every arc into it (``mult="one"``) or a template unfolded
afresh each time an arc reaches it (``mult="omega"``).  An arc with
``mult="omega"`` produces infinitely many children instead of one.

Truncation assigns each concrete vertex a level and keeps those with
level < depth.  An arc inside a strongly connected part of the quotient costs
one level, any other arc costs nothing, and the j-th copy of an omega arc
costs j more.  Ids are sorted by (level, path key), so every truncation is a
prefix of the next one.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .errors import FormatError, InputError, PresentationError
from .graph import FINITE, INFINITE, DegreeClass, Family, Graph

MULTS = ("one", "omega")


@dataclass(frozen=True)
class Node:
    id: str
    cls: DegreeClass
    mult: str = "omega"
    complete: bool = False


@dataclass(frozen=True)
class Presentation:
    nodes: tuple
    arcs: tuple  # (src id, dst id, mult)
    start: str | None = None
    builtin_id: str | None = None
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.nodes:
            raise PresentationError("presentation has no nodes")
        index = {}
        for i, nd in enumerate(self.nodes):
            if nd.id in index:
                raise PresentationError(f"duplicate node id {nd.id!r}")
            if nd.mult not in MULTS:
                raise PresentationError(f"node {nd.id!r} has multiplicity {nd.mult!r}")
            index[nd.id] = i
        for a, b, m in self.arcs:
            for x in (a, b):
                if x not in index:
                    raise PresentationError(f"arc ({a!r}, {b!r}) names unknown node {x!r}")
            if m not in MULTS:
                raise PresentationError(f"arc ({a!r}, {b!r}) has multiplicity {m!r}")
            if m == "omega" and self.nodes[index[b]].mult == "one":
                raise PresentationError(f"omega arc ({a!r}, {b!r}) points at a single vertex")
        if self.start is not None and self.start not in index:
            raise PresentationError(f"start node {self.start!r} is unknown")
        object.__setattr__(self, "index", index)

    @property
    def start_node(self) -> str:
        return self.start if self.start is not None else self.nodes[0].id

    def node(self, nid: str) -> Node:
        return self.nodes[self.index[nid]]

    def digraph(self) -> nx.DiGraph:
        q = nx.DiGraph()
        for nd in self.nodes:
            q.add_node(nd.id)
        q.add_edges_from((a, b) for a, b, _ in self.arcs)
        return q


@dataclass(frozen=True)
class LassoWitness:
    stem: tuple  # start ... cycle[0]
    cycle: tuple  # closed: an arc leads from cycle[-1] back to cycle[0]

    def to_dict(self) -> dict:
        return {"stem": list(self.stem), "cycle": list(self.cycle)}


# --------------------------------------------------------------------------
# JSON


def presentation_to_dict(p: Presentation) -> dict:
    nodes = []
    for nd in p.nodes:
        entry = {"id": nd.id, "class": nd.cls.value, "mult": nd.mult}
        if nd.complete:
            entry["complete"] = True
        nodes.append(entry)
    doc = {"nodes": nodes, "arcs": [[a, b, m] for a, b, m in p.arcs]}
    if p.start is not None:
        doc["start"] = p.start
    if p.builtin_id is not None:
        doc["builtin"] = p.builtin_id
    return doc


def presentation_from_dict(doc) -> Presentation:
    if isinstance(doc, dict) and not doc.get("nodes") and isinstance(doc.get("builtin"), str):
        return builtin(doc["builtin"])
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list):
        raise FormatError('expected an object with a "nodes" list', "$")
    nodes = []
    for i, entry in enumerate(doc["nodes"]):
        loc = f"nodes[{i}]"
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise FormatError('expected an object with a string "id"', loc)
        try:
            cls = DegreeClass(entry.get("class", "finite"))
        except ValueError:
            raise FormatError(f"bad class {entry.get('class')!r}", loc + ".class") from None
        nodes.append(Node(entry["id"], cls, entry.get("mult", "omega"), bool(entry.get("complete", False))))
    arcs = []
    for i, arc in enumerate(doc.get("arcs", [])):
        if not isinstance(arc, list) or len(arc) not in (2, 3):
            raise FormatError("expected [src, dst] or [src, dst, mult]", f"arcs[{i}]")
        arcs.append((arc[0], arc[1], arc[2] if len(arc) == 3 else "one"))
    return Presentation(tuple(nodes), tuple(arcs), doc.get("start"), doc.get("builtin"))


def load_presentation(data) -> Presentation:
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc.msg}", f"presentation line {exc.lineno}") from None
    return presentation_from_dict(doc)


def save_presentation(p: Presentation) -> bytes:
    return (json.dumps(presentation_to_dict(p)) + "\n").encode("utf-8")


# --------------------------------------------------------------------------
# builtins


def _n(nid, cls, mult="omega", complete=False):
    return Node(nid, cls, mult, complete)


_BUILTINS = {
    # P_d
    "ray": (
        [_n("r", FINITE)],
        [("r", "r", "one")],
        None,
    ),
    # a middle vertex with a ray on each side
    "double_ray": (
        [_n("m", FINITE, "one"), _n("left", FINITE), _n("right", FINITE)],
        [("m", "left", "one"), ("m", "right", "one"),
         ("left", "left", "one"), ("right", "right", "one")],
        None,
    ),
    # K_{1,d}: infinite center, finite leaves
    "star": (
        [_n("center", INFINITE, "one"), _n("leaf", FINITE)],
        [("center", "leaf", "omega")],
        None,
    ),
    # K_d on a recurrent node whose instances are pairwise adjacent
    "infinite_clique_surrogate": (
        [_n("k", INFINITE, complete=True)],
        [("k", "k", "one")],
        None,
    ),
    # a ray of finite spine vertices, one tooth each, and a hub seeing the whole spine
    "comb_hub": (
        [_n("spine", FINITE), _n("tooth", FINITE), _n("hub", INFINITE, "one")],
        [("spine", "spine", "one"), ("spine", "tooth", "one"), ("spine", "hub", "one")],
        None,
    ),
    # a hub with infinitely many rays hanging off it
    "star_of_rays": (
        [_n("hub", INFINITE, "one"), _n("ray", FINITE)],
        [("hub", "ray", "omega"), ("ray", "ray", "one")],
        None,
    ),
    # two levels of infinite branching, finite leaves at the bottom
    "hub_tree": (
        [_n("h0", INFINITE, "one"), _n("h1", INFINITE), _n("leaf", FINITE)],
        [("h0", "h1", "omega"), ("h1", "leaf", "omega")],
        None,
    ),
    # finite and infinite vertices alternate along the spine
    "alternating_comb": (
        [_n("a", FINITE), _n("b", INFINITE), _n("leaf", FINITE)],
        [("a", "b", "one"), ("b", "a", "one"), ("b", "leaf", "omega")],
        None,
    ),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> Presentation:
    try:
        nodes, arcs, start = _BUILTINS[name]
    except KeyError:
        raise PresentationError(
            f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}"
        ) from None
    return Presentation(tuple(nodes), tuple(arcs), start, name)


# --------------------------------------------------------------------------
# truncation


def _recurrent_arcs(p):
    q = p.digraph()
    comp_of = {}
    for i, comp in enumerate(nx.strongly_connected_components(q)):
        for x in comp:
            comp_of[x] = i
    return {(a, b) for a, b, _ in p.arcs if comp_of[a] == comp_of[b]}


def _singleton_levels(p, recurrent):
    """Least level at which each single-vertex node appears (Dijkstra over arc costs)."""
    start = p.start_node
    dist = {start: 0}
    heap = [(0, start)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist.get(x, float("inf")):
            continue
        for a, b, _ in p.arcs:
            if a != x:
                continue
            nd = d + (1 if (a, b) in recurrent else 0)
            if nd < dist.get(b, float("inf")):
                dist[b] = nd
                heapq.heappush(heap, (nd, b))
    return {x: d for x, d in dist.items() if p.node(x).mult == "one"}


def _infinitely_instanced(p):
    """Omega nodes that get infinitely many concrete instances."""
    reach = nx.descendants(p.digraph(), p.start_node) | {p.start_node}
    gen = nx.DiGraph()
    gen.add_nodes_from(reach)
    for a, b, m in p.arcs:
        if a in reach and p.node(b).mult == "omega":
            gen.add_edge(a, b, omega=(m == "omega"))
    seeds = set()
    for comp in nx.strongly_connected_components(gen):
        x = next(iter(comp))
        if len(comp) > 1 or gen.has_edge(x, x):
            seeds |= comp
    seeds |= {b for a, b, d in gen.edges(data=True) if d["omega"]}
    out = set(seeds)
    for x in seeds:
        out |= nx.descendants(gen, x)
    return frozenset(x for x in out if p.node(x).mult == "omega")


@dataclass(frozen=True)
class Truncation:
    graph: Graph
    node_of: tuple  # vertex -> quotient node id
    level: tuple


def expand(p: Presentation, depth: int) -> Truncation:
    """Concrete truncation at ``depth`` with vertex-to-node map and levels."""
    if isinstance(depth, bool) or not isinstance(depth, int) or depth < 1:
        raise InputError(f"depth must be a positive integer, got {depth!r}")
    limit = depth - 1
    recurrent = _recurrent_arcs(p)
    single_level = _singleton_levels(p, recurrent)
    infinite_nodes = _infinitely_instanced(p)

    inst = {}  # key -> (level, node)
    raw_edges = []
    families = []  # (owner key, [member keys], tail key, anchor key)
    queue = deque()

    def singleton_key(nid):
        return ((-1, p.index[nid]),)

    def add(key, level, nid):
        if key not in inst:
            inst[key] = (level, nid)
            queue.append(key)

    start = p.start_node
    if p.node(start).mult == "one":
        add(singleton_key(start), single_level[start], start)
    else:
        add((), 0, start)
    for nid, lvl in single_level.items():
        if lvl <= limit:
            add(singleton_key(nid), lvl, nid)

    while queue:
        key = queue.popleft()
        level, nid = inst[key]
        for ai, (a, b, m) in enumerate(p.arcs):
            if a != nid:
                continue
            cost = 1 if (a, b) in recurrent else 0
            if p.node(b).mult == "one":
                if single_level[b] <= limit and b != nid:
                    raw_edges.append((key, singleton_key(b)))
                continue
            copies = []
            j = 0
            while level + cost + j <= limit:
                child = key + ((ai, j),)
                add(child, level + cost + j, b)
                raw_edges.append((key, child))
                copies.append(child)
                if m == "one":
                    break
                j += 1
            if m == "omega" and copies:
                families.append((key, copies, copies[-1], key))

    by_node = {}
    for key, (level, nid) in inst.items():
        by_node.setdefault(nid, []).append(key)
    order = sorted(inst, key=lambda k: (inst[k][0], k))
    vid = {k: i for i, k in enumerate(order)}
    for nid, keys in by_node.items():
        keys.sort(key=vid.get)
        nd = p.node(nid)
        if nd.complete:
            for i, x in enumerate(keys):
                for y in keys[i + 1:]:
                    raw_edges.append((x, y))
            if nid in infinite_nodes and len(keys) > 1:
                for x in keys:
                    last = keys[-1] if keys[-1] != x else keys[-2]
                    families.append((x, [y for y in keys if y != x], last, last))

    edges = {(min(vid[x], vid[y]), max(vid[x], vid[y])) for x, y in raw_edges if x != y}
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    # single vertices adjacent to the instances of an infinitely instanced node
    for nid, keys in by_node.items():
        if p.node(nid).mult != "one":
            continue
        s = vid[keys[0]]
        for other in sorted(infinite_nodes):
            seen = sorted(v for v in adj.get(s, ()) if inst[order[v]][1] == other)
            if any(a == other and b == nid for a, b, _ in p.arcs) and seen:
                families.append((keys[0], [order[v] for v in seen], order[seen[-1]], order[seen[-1]]))

    fams = [[] for _ in order]
    for owner, members, tail, anchor in families:
        fams[vid[owner]].append(Family(frozenset(vid[m] for m in members), vid[tail], vid[anchor]))
    labels = tuple(p.node(inst[k][1]).cls for k in order)
    g = Graph(len(order), frozenset(edges), labels, tuple(tuple(f) for f in fams))
    return Truncation(g, tuple(inst[k][1] for k in order), tuple(inst[k][0] for k in order))


def truncate(p: Presentation, depth: int) -> Graph:
    return expand(p, depth).graph


# --------------------------------------------------------------------------
# detection


def _bfs_path(q, src, dst, allowed):
    prev = {src: None}
    dq = deque([src])
    while dq:
        x = dq.popleft()
        if x == dst:
            break
        for y in sorted(q.successors(x)):
            if y in allowed and y not in prev:
                prev[y] = x
                dq.append(y)
    if dst not in prev:
        return None
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def detect_alternating_ray(p: Presentation) -> LassoWitness | None:
    """Lasso through a cycle carrying both labels, reachable from the start node.

    Such a cycle exists iff some reachable nontrivial strongly connected
    component holds both a finite and an infinite node.
    """
    q = p.digraph()
    start = p.start_node
    reach = nx.descendants(q, start) | {start}
    sub = q.subgraph(reach)
    order = {nd.id: i for i, nd in enumerate(p.nodes)}
    comps = sorted(nx.strongly_connected_components(sub), key=lambda c: min(order[x] for x in c))
    for comp in comps:
        x = next(iter(comp))
        if len(comp) == 1 and not sub.has_edge(x, x):
            continue
        classes = {p.node(y).cls for y in comp}
        if classes != {FINITE, INFINITE}:
            continue
        stems = {y: _bfs_path(sub, start, y, reach) for y in comp}
        entry = min(comp, key=lambda y: (len(stems[y]), order[y]))
        f = min((y for y in comp if p.node(y).cls is FINITE), key=order.get)
        i = min((y for y in comp if p.node(y).cls is INFINITE), key=order.get)
        walk = _bfs_path(sub, entry, f, comp)
        walk += _bfs_path(sub, f, i, comp)[1:]
        walk += _bfs_path(sub, i, entry, comp)[1:]
        return LassoWitness(tuple(stems[entry]), tuple(walk[:-1]))
    return None
