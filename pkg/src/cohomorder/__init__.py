"""Exact tools for the cohomomorphism preorder on graphs: graph algebra,
rational LP, cohomomorphism search, prefix-order line tables, the simulated
spectral model and the preorder embedding pipeline."""
from .errors import BudgetExhausted, CapExceeded, InvariantViolation
from .graphs import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    fraction_graph,
    independence_number,
    join,
    maximum_independent_set,
    power,
    strong_product,
)
from .lp import fractional_clique_cover, fractional_clique_cover_number, rational_simplex
from .cohom import VertexMap, find_cohomomorphism, is_cohomomorphism, power_relation_probe
from .words import AntichainFamily, FinitePreorder, encode_finite_preorder, family_leq, word_leq
from .lines import LineTable, build_line_table, verify_line_table
from .spectral import envelope_leq, eval_spectral, model_soundness, parse_expr, to_max_poly, to_text
from .pipeline import PipelineConfig, embed_preorder, verify_report

__all__ = [
    "BudgetExhausted",
    "CapExceeded",
    "InvariantViolation",
    "Graph",
    "complement",
    "complete_graph",
    "cycle_graph",
    "disjoint_union",
    "empty_graph",
    "fraction_graph",
    "independence_number",
    "join",
    "maximum_independent_set",
    "power",
    "strong_product",
    "fractional_clique_cover",
    "fractional_clique_cover_number",
    "rational_simplex",
    "VertexMap",
    "find_cohomomorphism",
    "is_cohomomorphism",
    "power_relation_probe",
    "AntichainFamily",
    "FinitePreorder",
    "encode_finite_preorder",
    "family_leq",
    "word_leq",
    "LineTable",
    "build_line_table",
    "verify_line_table",
    "envelope_leq",
    "eval_spectral",
    "model_soundness",
    "parse_expr",
    "to_max_poly",
    "to_text",
    "PipelineConfig",
    "embed_preorder",
    "verify_report",
]
