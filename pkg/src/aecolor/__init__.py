"""Acyclic edge coloring toolkit.

Exact acyclic chromatic index computation, a move-based constructive
colorer, exact maximum average degree, and executable verification of
critical-graph structure lemmas and discharging arguments at desk scale.
"""

from .coloring import (
    BichromaticTrace,
    ColorSets,
    EdgeColoring,
    color_sets,
    exists_critical_path,
    has_bichromatic_cycle,
    is_proper,
    swap_two_colors_on_component,
    trace_bichromatic,
)
from .colorer import ColoringReport, choose_palette, color_graph, extend_one_edge
from .density import density_at_least, mad_brute, mad_exact, planar_girth_bound
from .graph import (
    Graph,
    GraphError,
    build_graph,
    degree_profile,
    delete_edge,
    girth,
    is_2_connected,
    parse_edge_list,
)
from .solver import (
    CriticalityReport,
    SolveBudget,
    chi_a_exact,
    is_acyclically_k_colorable,
    is_critical,
)
from .structure import (
    ChargeState,
    critical_sweep,
    discharge,
    discharging_contradiction_report,
    fact2_verify,
    lemma_suite,
)

__all__ = [
    "BichromaticTrace", "ChargeState", "ColorSets", "ColoringReport",
    "CriticalityReport", "EdgeColoring", "Graph", "GraphError", "SolveBudget",
    "build_graph", "chi_a_exact", "choose_palette", "color_graph",
    "color_sets", "critical_sweep", "degree_profile", "delete_edge",
    "density_at_least", "discharge", "discharging_contradiction_report",
    "exists_critical_path", "extend_one_edge", "fact2_verify", "girth",
    "has_bichromatic_cycle", "is_2_connected", "is_acyclically_k_colorable",
    "is_critical", "is_proper", "lemma_suite", "mad_brute", "mad_exact",
    "parse_edge_list", "planar_girth_bound", "swap_two_colors_on_component",
    "trace_bichromatic",
]
