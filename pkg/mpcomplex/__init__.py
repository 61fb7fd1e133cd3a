"""The matched-pair double complex and its cohomology groups."""

from .cohomology import (
    PiMap,
    PiSequenceReport,
    RestrictedSubgroup,
    bidegree_coboundaries,
    bidegree_cocycles,
    bidegree_cohomology,
    cohomology_module_of_N,
    is_tot_cocycle,
    iterated_cohomology,
    matched_pair_cohomology,
    mp_cohomology_classes,
    pi_map,
    pi_sequence_report,
    restricted_subgroup,
    total_cohomology,
)
from .double_complex import MPCohomologyClass, MPDoubleComplex, build_double_complex

__all__ = [
    "PiMap",
    "PiSequenceReport",
    "RestrictedSubgroup",
    "bidegree_coboundaries",
    "bidegree_cocycles",
    "bidegree_cohomology",
    "cohomology_module_of_N",
    "is_tot_cocycle",
    "iterated_cohomology",
    "matched_pair_cohomology",
    "mp_cohomology_classes",
    "pi_map",
    "pi_sequence_report",
    "restricted_subgroup",
    "total_cohomology",
    "MPCohomologyClass",
    "MPDoubleComplex",
    "build_double_complex",
]
