"""corewatch: per-vertex engagement influence on k-core structure.

For every vertex of an undirected graph the engine computes which vertices
would lose coreness if it were collapsed (degree forced to 0) and which would
gain coreness if it were anchored (degree forced to infinity), and keeps both
answers current under streaming edge insertions and removals.
"""

from .decomp import CorenessState, compute_layers, core_decompose, k_core_membership
from .followers import (
    FollowerStore,
    SupportOverlay,
    compute_all_followers,
    find_anchored_followers,
    find_collapsed_followers,
    shrink,
)
from .graph import EdgeListParseError, Graph, load_edge_list
from .maintenance import (
    FollowerEngine,
    UpdateReport,
    maintain_coreness,
    maintain_followers,
)
from .oracle import (
    oracle_anchored_followers,
    oracle_collapsed_followers,
    oracle_coreness,
)
from .shells import ShellComponent, ShellIndex, component_of, shell_decompose

__version__ = "0.1.0"

__all__ = [
    "CorenessState",
    "EdgeListParseError",
    "FollowerEngine",
    "FollowerStore",
    "Graph",
    "ShellComponent",
    "ShellIndex",
    "SupportOverlay",
    "UpdateReport",
    "component_of",
    "compute_all_followers",
    "compute_layers",
    "core_decompose",
    "find_anchored_followers",
    "find_collapsed_followers",
    "k_core_membership",
    "load_edge_list",
    "maintain_coreness",
    "maintain_followers",
    "oracle_anchored_followers",
    "oracle_collapsed_followers",
    "oracle_coreness",
    "shell_decompose",
    "shrink",
]
