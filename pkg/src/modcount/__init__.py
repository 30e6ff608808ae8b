"""Counting colorings and connected spanning edge sets modulo a prime, with
the gadgets that make those counts hard."""

from .coloring import (
    count_colorings_bruteforce,
    count_colorings_folklore,
    count_colorings_rank,
    count_essentially_distinct_bruteforce,
)
from .cse import count_cse_bruteforce, count_cse_treedp
from .errors import (
    CapacityError,
    DecompositionError,
    FormatError,
    ModcountError,
    PreconditionError,
    SingularMatrixError,
)
from .fplinalg import FpMatrix, PrimeModulus, compatibility_matrix, fp_inverse, fp_rank, kronecker
from .gadgets import (
    CspInstance,
    GadgetInstance,
    clique_chain,
    csp_to_listcoloring,
    function_gadget,
    verify_gadget,
)
from .graph import ColorLists, Graph, LinearArrangement, cutwidth_of, k_stretch
from .treedecomp import TreeDecomposition, td_from_ordering
from .tutte import chromatic_at, essentially_distinct_mod, tutte_eval, verify_stretch_identity

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "ColorLists", "CspInstance", "DecompositionError", "FormatError",
    "FpMatrix", "GadgetInstance", "Graph", "LinearArrangement", "ModcountError",
    "PreconditionError", "PrimeModulus", "SingularMatrixError", "TreeDecomposition",
    "chromatic_at", "clique_chain", "compatibility_matrix", "count_colorings_bruteforce",
    "count_colorings_folklore", "count_colorings_rank", "count_cse_bruteforce",
    "count_cse_treedp", "count_essentially_distinct_bruteforce", "csp_to_listcoloring",
    "cutwidth_of", "essentially_distinct_mod", "fp_inverse", "fp_rank", "function_gadget",
    "k_stretch", "kronecker", "td_from_ordering", "tutte_eval", "verify_gadget",
    "verify_stretch_identity",
]
