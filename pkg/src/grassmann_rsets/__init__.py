"""Exact finite-geometry toolkit for R-sets of Grassmannians and their transformations."""

from .field import FieldElement, FieldError, FieldSpec, field_arith, field_from_json, frobenius, make_field
from .graph import Graph, GrassmannGraph, automorphism_group_order, grassmann_graph, parse_edge_list
from .involutions import (
    CharacteristicTwo,
    ComplementaryPair,
    Involution,
    PairRSet,
    commutes,
    eigensplit,
    generated_group_order,
    i_G,
    involution_from_pair,
    involutions_adjacent,
    is_transvection,
    negate,
    pairs_is_rset,
    transform_collineation,
    transform_correlation,
    verify_adjacency_transvection,
    verify_commuting_preserves_eigenspaces,
    verify_commuting_iff_rset,
)
from .maps import (
    GrassmannianMap,
    SemilinearMap,
    SesquilinearForm,
    classify_compositions,
    collineation_and_duality_subgroup_order,
    find_collineation_witness,
    induced_map,
    is_regular,
    ortho_complement_map,
    preserves_distance,
    transposition_map,
)
from .report import Report
from .rset import (
    CoordinateSystem,
    SearchCapExceeded,
    degree_of_inexactness,
    find_associated_basis,
    is_exact,
    is_rset,
    meet_closure,
    verify_degree_bound,
    verify_exactness_threshold,
)
from .subspace import (
    BudgetExceeded,
    Subspace,
    annihilator,
    canonicalize,
    complement_within,
    distance,
    enumerate_grassmannian,
    gaussian_binomial,
    is_adjacent,
    join,
    meet,
    span,
)

__all__ = [name for name in dir() if not name.startswith("_")]
