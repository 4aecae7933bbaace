"""Command-line interface.

Exit codes: 0 success, 1 verification failed, 2 usage or input error,
3 capacity exceeded.  Primary output is canonical JSON on stdout (or
``--output``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys

from . import exact
from .errors import (
    CapacityError,
    ContractError,
    EngineInvariantError,
    EngineStall,
    InputError,
    PresentationError,
    UndeterminedError,
)
from .graph import PartialColoring, coloring_to_dict, graph_to_dict, load_coloring, load_graph
from .ladder import MODES, ladder_run
from .presentation import BUILTIN_NAMES, builtin, detect_alternating_ray, load_presentation, truncate
from .rank import graph_rank_min, rank_table
from .solvers import greedy_unfriendly, oracle_maxcut, recursion_driver, verify_theorem
from .tree import dfs_normal_forest, dfs_normal_tree, is_normal

log = logging.getLogger("unfriendly")

DEFAULT_SEED = 0
DEFAULT_DEPTH = 8


class _Usage(Exception):
    pass


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_presentation(source):
    if source in BUILTIN_NAMES and not os.path.exists(source):
        return builtin(source)
    return load_presentation(_read(source))


def _load_any_graph(source, depth):
    """A graph file, a presentation file, or a builtin name (truncated at ``depth``)."""
    if source in BUILTIN_NAMES and not os.path.exists(source):
        return truncate(builtin(source), depth)
    data = _read(source)
    try:
        doc = json.loads(data)
    except json.JSONDecodeError:
        return load_graph(data)  # raises a located FormatError
    if isinstance(doc, dict) and ("nodes" in doc or "builtin" in doc):
        return truncate(load_presentation(data), depth)
    return load_graph(data)


def _frozen(args, n):
    if not getattr(args, "frozen", None):
        return PartialColoring({})
    k = load_coloring(_read(args.frozen))
    bad = [v for v in k.domain if not 0 <= v < n]
    if bad:
        raise InputError(f"frozen coloring names vertex {min(bad)} outside 0..{n - 1}")
    # every vertex given in the frozen file is part of K
    return PartialColoring(k.colors, k.domain)


# --------------------------------------------------------------------------
# subcommands; each returns (document, exit code, table lines)


def cmd_solve(args):
    g = _load_any_graph(args.input, args.depth)
    k = _frozen(args, g.n)
    if args.mode == "driver":
        c = recursion_driver(g, k, cap=args.cap)
    elif args.mode == "exact":
        c = oracle_maxcut(g, k, frozenset(g.vertices) - k.domain, cap=args.cap)
    else:
        start = k.updated({v: 0 for v in g.vertices if v not in k.domain})
        c = greedy_unfriendly(g, start)
    rep = verify_theorem(g, c, cap=args.cap)
    doc = {"mode": args.mode, "coloring": coloring_to_dict(c), "report": rep.to_dict()}
    table = [f"mode {args.mode}, {g.n} vertices", f"colors {''.join(map(str, c.as_list(g.n)))}"]
    table += _report_lines(rep)
    return doc, 0 if rep.ok else 1, table


def _report_lines(rep):
    lines = [f"strongly maximal: {'yes' if rep.strongly_maximal else 'no'}"]
    if rep.flip_witness is not None:
        lines.append(f"improving flip {rep.flip_witness} (dtrans {rep.dtrans})")
    lines.append(f"infinite-labeled vertices checked: {len(rep.unfriendly)}")
    if rep.non_unfriendly:
        lines.append(f"not unfriendly at {rep.non_unfriendly}")
    lines.append("PASS" if rep.ok else "FAIL")
    return lines


def cmd_verify(args):
    g = _load_any_graph(args.graph, args.depth)
    c = load_coloring(_read(args.coloring))
    if not c.is_total(g.n):
        missing = sorted(set(g.vertices) - c.domain)
        raise InputError(
            f"coloring must cover all {g.n} vertices; missing {missing[:5]}"
            if missing else f"coloring names vertices outside 0..{g.n - 1}"
        )
    rep = verify_theorem(g, c, cap=args.cap)
    return {"report": rep.to_dict()}, 0 if rep.ok else 1, _report_lines(rep)


def cmd_rank(args):
    g = _load_any_graph(args.input, args.depth)
    best, best_root = graph_rank_min(g)
    root = best_root if args.root is None else args.root
    table = rank_table(g, dfs_normal_tree(g, root))
    doc = {
        "per_vertex": {str(v): table.rank[v] for v in sorted(table.rank)},
        "root": root,
        "root_rank": table.root_rank,
        "min_over_roots": best,
        "min_root": best_root,
        "min_is_upper_bound": True,
    }
    lines = [
        f"rank {table.root_rank} with root {root}",
        f"least over DFS roots: {best} at root {best_root} (upper bound on the graph rank)",
    ]
    return doc, 0, lines


def cmd_nst(args):
    g = _load_any_graph(args.input, args.depth)
    trees = [dfs_normal_tree(g, args.root)] if args.root is not None else dfs_normal_forest(g)
    docs = [dict(t.to_dict(), normal=is_normal(g, t)) for t in trees]
    doc = docs[0] if len(docs) == 1 else {"forest": docs}
    lines = [f"tree rooted at {t.root}: {len(t.vertices)} vertices, normal" for t in trees]
    return doc, 0, lines


def cmd_detect(args):
    p = _load_presentation(args.input)
    w = detect_alternating_ray(p)
    doc = {"alternating_ray": w is not None, "witness": w.to_dict() if w else None}
    lines = [f"lasso stem {list(w.stem)} cycle {list(w.cycle)}" if w else "no alternating ray"]
    return doc, 0, lines


def cmd_truncate(args):
    g = truncate(_load_presentation(args.input), args.depth)
    return graph_to_dict(g), 0, [f"{g.n} vertices, {len(g.edges)} edges"]


def cmd_ladder(args):
    p = _load_presentation(args.input)
    try:
        depths = [int(x) for x in args.depths.split(",") if x.strip()]
    except ValueError:
        raise _Usage(f"bad --depths {args.depths!r}; expected e.g. 4,8,16") from None
    rep = ladder_run(p, depths, mode=args.mode, cap=args.cap)
    doc = rep.to_dict()
    lines = [f"{'depth':>6} {'vertices':>9} {'verified':>9}"]
    for d, n, gar in zip(rep.depths, rep.sizes, rep.guarantees):
        lines.append(f"{d:>6} {n:>9} {'yes' if gar['ok'] else 'no':>9}")
    if rep.depths:
        first = rep.depths[0]
        lines.append(f"stable at depth {first}: {100 * rep.coverage(first):.1f}%")
    det = [v for v, x in rep.verdicts.items() if x["status"] == "determined"]
    bad = [v for v in det if not rep.verdicts[v]["unfriendly"]]
    lines.append(f"determined verdicts: {len(det)}, failing: {len(bad)}")
    if rep.truncated:
        lines.append(f"truncated: {rep.note}")
    ok = all(gar["ok"] for gar in rep.guarantees) and not bad
    if rep.truncated:
        return doc, 3, lines
    return doc, 0 if ok else 1, lines


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", help="write the primary output here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for any randomized search order (solvers are deterministic)")
    common.add_argument("--cap", type=int, default=exact.DEFAULT_CAP,
                        help="largest non-forest component searched exactly")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="unfriendly", description="Unfriendly partitions toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(sp, flag="--input"):
        sp.add_argument(flag, required=True, help="graph JSON, presentation JSON, or builtin name")
        sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                        help="truncation depth when the input is a presentation")

    sp = sub.add_parser("solve", parents=[common], help="color a graph and verify the result")
    graph_input(sp)
    sp.add_argument("--frozen", help="coloring JSON of the frozen part K")
    sp.add_argument("--mode", choices=("greedy", "exact", "driver"), default="driver")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", parents=[common], help="check both guarantees for a coloring")
    graph_input(sp, "--graph")
    sp.add_argument("--coloring", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("rank", parents=[common], help="T-rank of a connected graph")
    graph_input(sp)
    sp.add_argument("--root", type=int)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("nst", parents=[common], help="depth-first normal spanning tree")
    graph_input(sp)
    sp.add_argument("--root", type=int)
    sp.set_defaults(func=cmd_nst)

    sp = sub.add_parser("detect", parents=[common], help="alternating-ray detection on a presentation")
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("truncate", parents=[common], help="finite truncation of a presentation")
    sp.add_argument("--input", required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.set_defaults(func=cmd_truncate)

    sp = sub.add_parser("ladder", parents=[common], help="solve a ladder of truncations")
    sp.add_argument("--input", required=True)
    sp.add_argument("--depths", default="4,8,16")
    sp.add_argument("--mode", choices=MODES, default="warm-start")
    sp.set_defaults(func=cmd_ladder)
    return parser


def _emit(args, doc, lines, out):
    if args.format == "table":
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=err)
    random.seed(args.seed)
    try:
        doc, code, lines = args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=err)
        return 2
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=err)
        return 3
    except (InputError, PresentationError, ContractError, UndeterminedError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except EngineStall as exc:
        print(f"engine stalled: {exc}; chain {exc.chain}", file=err)
        return 1
    except EngineInvariantError as exc:
        print(f"engine invariant broken: {exc}", file=err)
        return 1
    _emit(args, doc, lines, out)
    log.info("%s finished with exit code %d", args.command, code)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
