"""Exact stationary distributions and principal ratios of directed random walks.

The toolkit computes stationary distributions of simple random walks on
strongly connected digraphs in exact rational arithmetic, evaluates the
principal ratio max(phi)/min(phi), builds the graphs attaining its
maximum together with the counterexample families around the
degree-plus-discrepancy certificate, and re-derives the extremal
characterization by exhaustive search at small sizes.
"""

from .digraph import (
    Digraph,
    build_digraph,
    complete_digraph,
    distance,
    is_aperiodic,
    is_eulerian,
    is_strongly_connected,
    parse_edge_list,
    serialize_edge_list,
    set_distance,
    to_dot,
)
from .perron import (
    Circulation,
    FloatDistribution,
    RationalDistribution,
    StochasticMatrix,
    circulation_of,
    principal_ratio,
    solve_exact,
    solve_power,
    transition_matrix,
    verify_circulation,
    vmax_vmin,
    walk_profile,
)
from .extremal import (
    ExtremalVariant,
    LabeledPathGraph,
    PathCoefficients,
    add_edge_transform,
    chain_graph,
    check_addition_family,
    check_deletion_family,
    construct_degree_counterexample,
    construct_discrepancy_counterexample,
    construct_extremal,
    d1_closed_form,
    delete_edge_transform,
    extremal_ratio,
    path_coefficients,
    sample_addition_family,
    sample_deletion_family,
)
from .bounds import (
    CertificateParams,
    CertificateReport,
    check_certificate,
    degree_diameter_bound,
    extremal_structure_report,
    falling_factorial,
    falling_factorial_bound,
    path_product_bound,
    universal_ratio_bound,
)
from .oracle import (
    EnumerationReport,
    are_isomorphic,
    enumerate_strongly_connected,
    max_principal_ratio_brute,
    verify_extremal_characterization,
)

__version__ = "0.1.0"

__all__ = [
    "Circulation",
    "CertificateParams",
    "CertificateReport",
    "Digraph",
    "EnumerationReport",
    "ExtremalVariant",
    "FloatDistribution",
    "LabeledPathGraph",
    "PathCoefficients",
    "RationalDistribution",
    "StochasticMatrix",
    "add_edge_transform",
    "are_isomorphic",
    "build_digraph",
    "chain_graph",
    "check_addition_family",
    "check_certificate",
    "check_deletion_family",
    "circulation_of",
    "complete_digraph",
    "construct_degree_counterexample",
    "construct_discrepancy_counterexample",
    "construct_extremal",
    "d1_closed_form",
    "degree_diameter_bound",
    "delete_edge_transform",
    "distance",
    "enumerate_strongly_connected",
    "extremal_ratio",
    "extremal_structure_report",
    "falling_factorial",
    "falling_factorial_bound",
    "is_aperiodic",
    "is_eulerian",
    "is_strongly_connected",
    "max_principal_ratio_brute",
    "parse_edge_list",
    "path_coefficients",
    "path_product_bound",
    "principal_ratio",
    "sample_addition_family",
    "sample_deletion_family",
    "serialize_edge_list",
    "set_distance",
    "solve_exact",
    "solve_power",
    "to_dot",
    "transition_matrix",
    "universal_ratio_bound",
    "verify_circulation",
    "verify_extremal_characterization",
    "vmax_vmin",
    "walk_profile",
]
