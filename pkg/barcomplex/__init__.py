"""Group cohomology from the bar cochain complex."""

from .cohomology import (
    InducedMap,
    StabilizationReport,
    coefficient_change,
    cohomology_of_complex,
    cohomology_with_module_coefficients,
    group_cohomology,
    induced_map,
    stabilization_report,
)
from .complex import (
    CoefficientModule,
    GroupCochainComplex,
    all_tuples,
    bar_differential,
    build_bar_complex,
    coboundary_values,
    cochain_from_function,
    evaluate_cochain,
    full_index,
    is_group_cocycle,
    normalized_index,
    normalized_tuples,
    pullback_matrix,
    tuple_list,
    unnormalized_bar_complex,
)

__all__ = [
    "InducedMap",
    "StabilizationReport",
    "coefficient_change",
    "cohomology_of_complex",
    "cohomology_with_module_coefficients",
    "group_cohomology",
    "induced_map",
    "stabilization_report",
    "CoefficientModule",
    "GroupCochainComplex",
    "all_tuples",
    "bar_differential",
    "build_bar_complex",
    "coboundary_values",
    "cochain_from_function",
    "evaluate_cochain",
    "full_index",
    "is_group_cocycle",
    "normalized_index",
    "normalized_tuples",
    "pullback_matrix",
    "tuple_list",
    "unnormalized_bar_complex",
]
