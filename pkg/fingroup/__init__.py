"""Finite groups, matched pairs and bismash products."""

from .groups import FiniteGroup, induced_subgroup, is_subgroup, subgroup_elements, validate_group
from .library import (
    cyclic,
    d4_factorization,
    dihedral,
    direct_product,
    inversion_pair,
    permutation_group,
    s4_factorization,
    semidirect_pair,
    standard_pairs,
    symmetric,
)
from .matched_pair import (
    MATCHED_PAIR_AXIOMS,
    BismashGroup,
    GroupMatchedPair,
    act_left_tuple,
    act_left_tuples,
    act_right_tuple,
    act_right_tuples,
    bismash,
    from_exact_factorization,
    trivial_matched_pair,
    validate_matched_pair,
)

__all__ = [
    "FiniteGroup",
    "induced_subgroup",
    "is_subgroup",
    "subgroup_elements",
    "validate_group",
    "cyclic",
    "d4_factorization",
    "dihedral",
    "direct_product",
    "inversion_pair",
    "permutation_group",
    "s4_factorization",
    "semidirect_pair",
    "standard_pairs",
    "symmetric",
    "MATCHED_PAIR_AXIOMS",
    "BismashGroup",
    "GroupMatchedPair",
    "act_left_tuple",
    "act_left_tuples",
    "act_right_tuple",
    "act_right_tuples",
    "bismash",
    "from_exact_factorization",
    "trivial_matched_pair",
    "validate_matched_pair",
]
