"""Unfriendly partitions of countable graphs on finite labeled instances."""

from .coloring import (
    Verdict,
    cut_size,
    dtrans,
    find_improving_flip,
    flip,
    is_almost_strongly_maximal_in,
    is_close,
    is_strongly_maximal_in,
    is_unfriendly_at,
    trans_at,
    trans_edges,
)
from .errors import (
    CapacityError,
    ContractError,
    EngineInvariantError,
    EngineStall,
    FormatError,
    InputError,
    PresentationError,
    UndeterminedError,
    UnfriendlyError,
)
from .graph import FINITE, INFINITE, DegreeClass, Family, Graph, PartialColoring
from .presentation import Presentation, builtin, detect_alternating_ray, truncate
from .rank import decompose, graph_rank, graph_rank_min, rank_table
from .tree import TreeOrder, dfs_normal_tree, is_normal

__version__ = "0.1.0"
