"""How the interaction graph of a Boolean network changes under isomorphism."""

from .conjugate import PartialPerm, Perm, complete_partial, conjugate, find_isomorphism
from .core import (
    CycleDecomposition,
    Digraph,
    InvariantViolation,
    Network,
    PreconditionError,
    cycle_decomposition,
    interaction_graph,
    large_independent_set,
)
from .enumeration import (
    GraphFamily,
    all_graphs,
    catalog_n2,
    gsize_estimate,
    sample_graphs,
    uniqueness_check,
)
from .nice_sets import (
    NiceSetReport,
    find_nice_set,
    is_closed_by,
    is_nice,
    missing_arc_network,
    nice_from_missing_arc,
)
from .sparse import (
    CubeSubset,
    avg_degree_check,
    boundary,
    build_fA,
    harper_check,
    lex_prefix,
    verify_sparse_family,
)
from .witness import (
    Route,
    WitnessResult,
    build_X_sets,
    complete_witness,
    witness_from_fixed_points,
    witness_from_independent_set,
    witness_from_limit_cycles,
)

__version__ = "0.1.0"
