"""Rigorous upper bounds for splitting indices of central extensions over
iterated surface-bundle groups, and for the degrees of the covers that carry
a second fibration on doubly fibered complex surfaces and their iterates.

All arithmetic is exact below a configurable bit budget and soundly rounded
up (never down) above it; see ``kodairabound.bignum`` for the value model.
"""

from .bignum import (
    BoundValue,
    BudgetError,
    DomainError,
    bit_budget,
    bv_cmp,
    bv_log2_upper,
    describe,
    format_exact,
    format_log2,
    local_bit_budget,
    set_bit_budget,
)
from .counting import (
    complement_count_bound,
    hall_count,
    hall_upper,
    literal_out_product_report,
    out_order_elementary_2,
)
from .extension import (
    ClosedFormComparison,
    IndexBoundTrace,
    Length3Literal,
    closed_form_compare,
    closed_form_length2,
    exponent_two_base_factor,
    exponent_two_base_factor_check,
    index_bound,
    layer_index_bound,
    literal_length3,
    normalizer_index_bound,
    recursion_base_factor,
    surface_index_bound,
)
from .groups import FiniteAbelianGroup, GenusProfile, genus_bound, quotient_profile, subgroup_profile
from .pipeline import (
    BoundReport,
    LiteralExample,
    PipelineComparison,
    PipelineInputs,
    RankPreset,
    StageBound,
    closed_form_dim2,
    dim3_exponent,
    dim3_literal,
    dim4_exponent,
    dim4_literal,
    double_fiber_homology_order,
    local_system_rank,
    pipeline_example_compare,
    punctured_homology_order,
    stage_bounds,
    total_degree_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BoundValue",
    "BudgetError",
    "DomainError",
    "bit_budget",
    "bv_cmp",
    "bv_log2_upper",
    "describe",
    "format_exact",
    "format_log2",
    "local_bit_budget",
    "set_bit_budget",
    "complement_count_bound",
    "hall_count",
    "hall_upper",
    "literal_out_product_report",
    "out_order_elementary_2",
    "ClosedFormComparison",
    "IndexBoundTrace",
    "Length3Literal",
    "closed_form_compare",
    "closed_form_length2",
    "exponent_two_base_factor",
    "exponent_two_base_factor_check",
    "index_bound",
    "layer_index_bound",
    "literal_length3",
    "normalizer_index_bound",
    "recursion_base_factor",
    "surface_index_bound",
    "FiniteAbelianGroup",
    "GenusProfile",
    "genus_bound",
    "quotient_profile",
    "subgroup_profile",
    "BoundReport",
    "LiteralExample",
    "PipelineComparison",
    "PipelineInputs",
    "RankPreset",
    "StageBound",
    "closed_form_dim2",
    "dim3_exponent",
    "dim3_literal",
    "dim4_exponent",
    "dim4_literal",
    "double_fiber_homology_order",
    "local_system_rank",
    "pipeline_example_compare",
    "punctured_homology_order",
    "stage_bounds",
    "total_degree_bound",
]
