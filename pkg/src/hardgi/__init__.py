"""Hard graph-isomorphism instances built from multipedes, plus an
instrumented individualization-refinement solver to measure them."""

from .errors import FormatError, GenerationError, ResourceLimitError, SearchBudgetExceeded
from .graph import BipartiteBaseGraph, ColoredGraph, apply_permutation
from .gf2 import BitMatrix, f2_nullspace_basis, f2_rank, incidence_matrix
from .multipede import build_multipede, cfi_gadget, closure, rigidify, uncolored_wrap
from .wl import Partition, color_refine, wl_equivalent, wl_k
from .pebble import Winner, bp_winner
from .basegen import GenParams, generate_hard_instance, random_base
from .ir import build_search_tree, isomorphic

__version__ = "0.1.0"

__all__ = [
    "FormatError", "GenerationError", "ResourceLimitError", "SearchBudgetExceeded",
    "BipartiteBaseGraph", "ColoredGraph", "apply_permutation",
    "BitMatrix", "f2_nullspace_basis", "f2_rank", "incidence_matrix",
    "build_multipede", "cfi_gadget", "closure", "rigidify", "uncolored_wrap",
    "Partition", "color_refine", "wl_equivalent", "wl_k",
    "Winner", "bp_winner",
    "GenParams", "generate_hard_instance", "random_base",
    "build_search_tree", "isomorphic",
]
