"""Coloring solvers: exact, greedy, lemma procedures, case engine and driver."""

from .driver import TheoremReport, drive_region, finalize, recursion_driver, verify_theorem
from .engine import (
    EngineState,
    StableColoring,
    case_step,
    check_stable,
    find_case,
    initial_state,
    regular_core,
    run_engine,
    witness_chain,
)
from .lemmas import (
    extend_subtrees,
    fix_stable,
    grow_domain,
    improve_until_maximal,
    repair_flip,
    repair_set,
    solve_piece,
    stitch,
)
from .maxcut import greedy_trace, greedy_unfriendly, oracle_maxcut, reoptimize

__all__ = [
    "EngineState",
    "StableColoring",
    "TheoremReport",
    "case_step",
    "check_stable",
    "drive_region",
    "extend_subtrees",
    "finalize",
    "find_case",
    "fix_stable",
    "greedy_trace",
    "greedy_unfriendly",
    "grow_domain",
    "improve_until_maximal",
    "initial_state",
    "oracle_maxcut",
    "recursion_driver",
    "regular_core",
    "reoptimize",
    "repair_flip",
    "repair_set",
    "run_engine",
    "solve_piece",
    "stitch",
    "verify_theorem",
    "witness_chain",
]
