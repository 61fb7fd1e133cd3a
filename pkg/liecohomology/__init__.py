"""Chevalley–Eilenberg cohomology of Lie algebras and the group-plus-Lie computation of ℋ²."""

from .algebra import (
    LieAlgebraData,
    LieGroupAction,
    abelian,
    action_from_generators,
    conjugation_action,
    from_brackets,
    permutation_matrix,
    sl_basis,
    sl_coordinates,
    sl_structure_constants,
    validate_lie_action,
    validate_lie_algebra,
)
from .chevalley_eilenberg import (
    ChevalleyEilenbergComplex,
    LieCohomology,
    abelian_cohomology_dims,
    chevalley_eilenberg,
    exterior_action_matrix,
    exterior_basis,
    induced_action_on_H,
    invariants,
    lie_cohomology,
    lie_cohomology_dims,
)
from .method6 import Method6Configuration, check_actions_compatible, method6, method6_examples

__all__ = [
    "LieAlgebraData",
    "LieGroupAction",
    "abelian",
    "action_from_generators",
    "conjugation_action",
    "from_brackets",
    "permutation_matrix",
    "sl_basis",
    "sl_coordinates",
    "sl_structure_constants",
    "validate_lie_action",
    "validate_lie_algebra",
    "ChevalleyEilenbergComplex",
    "LieCohomology",
    "abelian_cohomology_dims",
    "chevalley_eilenberg",
    "exterior_action_matrix",
    "exterior_basis",
    "induced_action_on_H",
    "invariants",
    "lie_cohomology",
    "lie_cohomology_dims",
    "Method6Configuration",
    "check_actions_compatible",
    "method6",
    "method6_examples",
]
