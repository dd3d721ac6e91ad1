"""Conic divisor classes, F-signatures and NCCR mutations for Hibi rings.

Everything is exact: rationals are :class:`fractions.Fraction` and all
feasibility questions go through an exact simplex.
"""

from .checks import oracle_equivalence, partition_of_unity, run_checks, transfer_class, tree_independence
from .classgroup import class_group_rank, edge_class, lift_class, project_divisor, tree_transform
from .conic import (
    CapExceeded,
    Cell,
    ConicSystem,
    cell_of,
    conic_oracle,
    conic_polytope,
    divisor_region,
    enumerate_conic,
    is_conic_class,
)
from .exact import Constraint, FeasibilityResult, determinant, format_rational, parse_rational, solve_linear_system, strict_feasibility
from .geometry import (
    VPolytope,
    eulerian,
    join_volume_check,
    signature_table,
    signature_table_by_alcoves,
    vertex_enumeration,
    volume,
)
from .hasse import (
    Cycle,
    CyclePartition,
    SpanningTree,
    TreeError,
    choose_spanning_tree,
    cycle_partition,
    enumerate_circuits,
    fundamental_cycle,
    random_spanning_tree,
)
from .mutation import (
    ExchangeGraph,
    MutationError,
    canonicalize,
    exchange_graph,
    find_admissible_lambda,
    is_admissible,
    left_mutation,
    right_mutation,
)
from .poset import AugmentedPoset, Poset, PosetError, augment, chain, disjoint_chains, load_poset, parse_poset
from .segre import L_tilde, SegreSpec, conic_classes, in_L_tilde, is_rank_one_mcm, nccr_set, segre_poset, segre_tree, weights

__version__ = "0.1.0"
