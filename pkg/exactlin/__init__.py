"""Exact linear algebra over ℤ, ℤ/m and ℚ."""

from .modular import (
    ModularDiagonalization,
    ModularSolver,
    diagonalize_mod,
    kernel_mod,
    solve_mod,
    solve_mod_many,
    span_contains,
    spans_equal,
    submodule_order,
    submodule_orders,
)
from .presentation import (
    FiniteAbelianGroupPresentation,
    homology_at,
    is_isomorphic,
    map_respects_relations,
    normalize_cyclic,
    presented_image,
    presented_invariants,
    presented_kernel,
    presented_map_matrix,
    presented_quotient,
    span_quotient,
    subgroup_invariant_factors,
    subgroup_order,
    subgroups_equal,
    trivial_presentation,
)
from .rational import RationalMatrix
from .snf import (
    SmithDecomposition,
    format_invariant_factors,
    invariant_factors_from_orders,
    smith_decomposition,
    smith_normal_form,
)

__all__ = [
    "ModularDiagonalization",
    "ModularSolver",
    "diagonalize_mod",
    "kernel_mod",
    "solve_mod",
    "solve_mod_many",
    "span_contains",
    "spans_equal",
    "submodule_order",
    "submodule_orders",
    "FiniteAbelianGroupPresentation",
    "homology_at",
    "is_isomorphic",
    "map_respects_relations",
    "normalize_cyclic",
    "presented_image",
    "presented_invariants",
    "presented_kernel",
    "presented_map_matrix",
    "presented_quotient",
    "span_quotient",
    "subgroup_invariant_factors",
    "subgroup_order",
    "subgroups_equal",
    "trivial_presentation",
    "RationalMatrix",
    "SmithDecomposition",
    "format_invariant_factors",
    "invariant_factors_from_orders",
    "smith_decomposition",
    "smith_normal_form",
]
