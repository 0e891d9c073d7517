"""Permutation algebra and exact search for sorting by transpositions."""

from .bounds import (
    BoundsReport,
    bounds_report,
    bp_lower_bound,
    hurdle_lower_bound,
    min_ratio,
    palisade_distance,
    td3,
    three_norm,
    upper_bound,
)
from .cycle_graph import CycleGraph, build_graph, bp_bound_graph, odd_cycle_count, to_dot
from .errors import (
    ApplicabilityError,
    CapacityError,
    ConstructionError,
    DomainError,
    MalformedInputError,
    ParityError,
    SBTError,
    SizeMismatchError,
)
from .generators import (
    enumerate_3_permutations,
    enumerate_cycles,
    make_diametral_mod3,
    make_palisade,
    random_cycle,
)
from .perm_core import (
    Cycle,
    CycleDecomposition,
    ExtendedPermutation,
    Permutation,
    apply,
    compose,
    cycle_decomposition,
    enumerate_applicable,
    from_one_line,
    inverse,
    is_applicable,
    parse_cycles,
    parse_one_line,
    sigma_pi_inv,
)
from .search import (
    DistanceTable,
    SearchResult,
    SequenceQuery,
    build_distance_table,
    diameter_scan,
    exact_distance_ida,
    find_xy_sequence,
    three_norm_oracle,
)
from .structure import (
    StructureReport,
    analyze,
    classify_move,
    is_3_permutation,
    is_palisade,
    order_index,
)

__version__ = "0.1.0"
