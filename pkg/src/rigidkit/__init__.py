"""Infinitesimal rigidity of planar bar-joint frameworks under non-Euclidean
lq and polytopic norms, with constructive (2,2)-tight graph machinery."""

from .analysis import analyze_framework
from .canonical import are_isomorphic, canonical_form
from .construct import PlacementParams, construct_coloured_placement
from .frameworks import (
    DeviationTable,
    Framework,
    RigidityReport,
    finite_difference_flex_check,
    nontrivial_flex,
)
from .graph import (
    Graph,
    K1,
    SparsityParams,
    SparsityVerdict,
    TIGHT_2_2,
    complete_graph,
    is_sparse_bruteforce,
    is_sparse_pebble,
    is_spanning_tree,
    random_connected_graph,
    spans_all_vertices,
    validate_graph,
)
from .linalg import numerical_rank, svd_analysis, translation_basis
from .lq import (
    FlexClass,
    analyze,
    apply_linear_isometry,
    classify_flex,
    is_collinear,
    rigidity_matrix_lq,
    sample_regular_placement,
)
from .moves import (
    H1Move,
    H2Move,
    Move,
    MoveSequence,
    V4CMove,
    VK4Move,
    VSplitMove,
    apply_move,
    generate_tight_graph,
)
from .norms import (
    LqNorm,
    PolytopeNorm,
    kappa,
    l1_norm_2d,
    linf_norm,
    lq_length,
    polytope_length,
    signed_power,
)
from .polytope import (
    FrameworkColouring,
    TreeCriteria,
    analyze_poly,
    change_to_standard_facets,
    colour_framework,
    partition_flex_witness,
    rigidity_matrix_poly,
    spanning_tree_criteria,
)
from .reduce import reduce_to_k1

__version__ = "0.1.0"

__all__ = [
    "analyze_framework",
    "are_isomorphic",
    "canonical_form",
    "PlacementParams",
    "construct_coloured_placement",
    "DeviationTable",
    "Framework",
    "RigidityReport",
    "finite_difference_flex_check",
    "nontrivial_flex",
    "Graph",
    "K1",
    "SparsityParams",
    "SparsityVerdict",
    "TIGHT_2_2",
    "complete_graph",
    "is_sparse_bruteforce",
    "is_sparse_pebble",
    "is_spanning_tree",
    "random_connected_graph",
    "spans_all_vertices",
    "validate_graph",
    "numerical_rank",
    "svd_analysis",
    "translation_basis",
    "FlexClass",
    "analyze",
    "apply_linear_isometry",
    "classify_flex",
    "is_collinear",
    "rigidity_matrix_lq",
    "sample_regular_placement",
    "H1Move",
    "H2Move",
    "Move",
    "MoveSequence",
    "V4CMove",
    "VK4Move",
    "VSplitMove",
    "apply_move",
    "generate_tight_graph",
    "LqNorm",
    "PolytopeNorm",
    "kappa",
    "l1_norm_2d",
    "linf_norm",
    "lq_length",
    "polytope_length",
    "signed_power",
    "FrameworkColouring",
    "TreeCriteria",
    "analyze_poly",
    "change_to_standard_facets",
    "colour_framework",
    "partition_flex_witness",
    "rigidity_matrix_poly",
    "spanning_tree_criteria",
    "reduce_to_k1",
    "__version__",
]
