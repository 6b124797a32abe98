"""Naturally labeled posets through their Boolean poset matrices."""

from .errors import (
    CapacityError,
    ExtensionError,
    NaturalLabelingError,
    NotAnAntichainError,
    NotAnAutomorphismError,
    PosetError,
    StructureError,
    TopologyError,
)
from .posetcore import (
    BoolMatrix,
    PosetMatrix,
    PosetVector,
    bool_product,
    cover_relations,
    disjoint_sum,
    from_relations,
    height_and_width,
    parse_matrix,
    standard_poset,
    strict_sets,
    v_extension,
    validate_poset_matrix,
)
from .ideals import (
    IdealLattice,
    antichain_to_vector,
    enumerate_poset_vectors,
    ideal_to_max_antichain,
    is_poset_vector,
    join_irreducibles,
    lattice_join_meet,
)
from .symmetry import (
    OrbitPartition,
    PermGroup,
    TwinDecomposition,
    apply_permutation,
    aut_order_via_twins,
    automorphism_group,
    burnside_count,
    canonical_form,
    fix_count,
    is_isomorphic,
    orbits_on_vectors,
    size_preserving_subgroup,
    triviality_predicates,
    twin_decomposition,
)
from .topology import (
    NLT,
    cut,
    first,
    generate_all,
    grow,
    ideals_to_nlt,
    next_in,
    next_nlt,
    nlt_to_poset,
    validate_nlt,
)
from .enumeration import CountReport, count_nip, count_nl, enumerate_nl, orbit_sum_report

__version__ = "0.1.0"

__all__ = [
    "BoolMatrix",
    "CapacityError",
    "CountReport",
    "ExtensionError",
    "IdealLattice",
    "NLT",
    "NaturalLabelingError",
    "NotAnAntichainError",
    "NotAnAutomorphismError",
    "OrbitPartition",
    "PermGroup",
    "PosetError",
    "PosetMatrix",
    "PosetVector",
    "StructureError",
    "TopologyError",
    "TwinDecomposition",
    "antichain_to_vector",
    "apply_permutation",
    "aut_order_via_twins",
    "automorphism_group",
    "bool_product",
    "burnside_count",
    "canonical_form",
    "count_nip",
    "count_nl",
    "cover_relations",
    "cut",
    "disjoint_sum",
    "enumerate_nl",
    "enumerate_poset_vectors",
    "first",
    "fix_count",
    "from_relations",
    "generate_all",
    "grow",
    "height_and_width",
    "ideal_to_max_antichain",
    "ideals_to_nlt",
    "is_isomorphic",
    "is_poset_vector",
    "join_irreducibles",
    "lattice_join_meet",
    "next_in",
    "next_nlt",
    "nlt_to_poset",
    "orbit_sum_report",
    "orbits_on_vectors",
    "parse_matrix",
    "size_preserving_subgroup",
    "standard_poset",
    "strict_sets",
    "triviality_predicates",
    "twin_decomposition",
    "v_extension",
    "validate_nlt",
    "validate_poset_matrix",
]
