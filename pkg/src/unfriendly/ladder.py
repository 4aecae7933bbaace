"""Truncation ladders: solve growing truncations and watch colors settle.

Truncations are prefix-monotone (vertex ``v`` keeps its id at every later
depth), so colors can be compared vertex by vertex across depths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import exact
from .coloring import neighbor_split
from .errors import CapacityError, InputError
from .graph import PartialColoring
from .presentation import Presentation, truncate
from .solvers.driver import recursion_driver, verify_theorem

MODES = ("independent", "warm-start")


@dataclass
class LadderReport:
    depths: list
    sizes: list
    colorings: list  # per solved depth, color list
    stabilization: dict  # vertex -> least depth from which its color never changes
    stable_prefix: list
    verdicts: dict  # vertex -> {"status", "unfriendly", "opposite", "same", "certificate"}
    guarantees: list  # per solved depth: verification summary
    mode: str = "warm-start"
    truncated: bool = False
    note: str | None = None
    builtin: str | None = None
    detector: dict | None = field(default=None)

    def coverage(self, depth: int) -> float:
        """Fraction of the vertices present at ``depth`` that are stable."""
        i = self.depths.index(depth)
        n = self.sizes[i]
        if n == 0:
            return 1.0
        stable = set(self.stable_prefix)
        return sum(1 for v in range(n) if v in stable) / n

    def to_dict(self) -> dict:
        return {
            "builtin": self.builtin,
            "mode": self.mode,
            "depths": self.depths,
            "sizes": self.sizes,
            "truncated": self.truncated,
            "note": self.note,
            "colorings": self.colorings,
            "stabilization": {str(v): self.stabilization[v] for v in sorted(self.stabilization)},
            "stable_prefix": self.stable_prefix,
            "verdicts": {str(v): self.verdicts[v] for v in sorted(self.verdicts)},
            "guarantees": self.guarantees,
        }


def ladder_run(
    p: Presentation,
    depths: list,
    mode: str = "warm-start",
    cap: int = exact.DEFAULT_CAP,
) -> LadderReport:
    depths = list(depths)
    if not depths or any(not isinstance(d, int) or d < 1 for d in depths):
        raise InputError("depths must be positive integers")
    if any(b <= a for a, b in zip(depths, depths[1:])):
        raise InputError("depths must be strictly increasing")
    if mode not in MODES:
        raise InputError(f"mode must be one of {', '.join(MODES)}")

    solved, sizes, colorings, guarantees = [], [], [], []
    graphs = []
    truncated, note = False, None
    prev = None
    for d in depths:
        g = truncate(p, d)
        prefer = dict(enumerate(prev)) if (mode == "warm-start" and prev) else None
        try:
            c = recursion_driver(g, PartialColoring({}), prefer=prefer, cap=cap)
            rep = verify_theorem(g, c, cap=cap)
        except CapacityError as exc:
            truncated, note = True, f"depth {d}: {exc}"
            break
        colors = c.as_list(g.n)
        solved.append(d)
        sizes.append(g.n)
        colorings.append(colors)
        graphs.append(g)
        guarantees.append({
            "depth": d,
            "ok": rep.ok,
            "strongly_maximal": rep.strongly_maximal,
            "non_unfriendly": rep.non_unfriendly,
        })
        prev = colors

    stabilization = _stabilization(solved, colorings)
    last = solved[-1] if solved else None
    stable_prefix = sorted(v for v, d0 in stabilization.items() if d0 < last)
    verdicts = _verdicts(p, graphs[-1], colorings[-1], last) if solved else {}
    return LadderReport(
        solved, sizes, colorings, stabilization, stable_prefix, verdicts, guarantees,
        mode, truncated, note, p.builtin_id,
    )


def _stabilization(depths, colorings):
    out = {}
    if not colorings:
        return out
    final = colorings[-1]
    for v in range(len(final)):
        d0 = depths[-1]
        for d, col in zip(reversed(depths), reversed(colorings)):
            if v >= len(col) or col[v] != final[v]:
                break
            d0 = d
        out[v] = d0
    return out


def _verdicts(p, g, colors, depth):
    """Definitive verdicts only where the neighborhood is complete in the window."""
    nxt = truncate(p, depth + 1)
    c = PartialColoring(dict(enumerate(colors)))
    out = {}
    for v in g.vertices:
        opp, same = neighbor_split(g, c, v)
        complete = not g.families[v] and nxt.degree(v) == g.degree(v)
        cert = any(f.tail in c.colors and c[f.tail] != c[v] for f in g.families[v])
        out[v] = {
            "status": "determined" if complete else "boundary-undetermined",
            "unfriendly": opp >= same,
            "opposite": opp,
            "same": same,
            "certificate": cert,
        }
    return out
