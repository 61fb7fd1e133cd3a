"""Cosimplicial bicomplexes of matched pairs, Dold–Kan normalization and Eilenberg–Zilber maps."""

from .bicomplex import CosimplicialBicomplex, from_matched_pair
from .eilenberg_zilber import (
    SHUFFLE_CONVENTIONS,
    CochainMap,
    alexander_whitney,
    alexander_whitney_block,
    shuffle,
    shuffle_block,
    shuffles,
    verify_ez,
)
from .objects import (
    CochainComplex,
    CosimplicialObject,
    DoldKanSplitting,
    NormalizedObject,
    constant_object,
    dold_kan_comparison,
    normalize,
)

__all__ = [
    "CosimplicialBicomplex",
    "from_matched_pair",
    "SHUFFLE_CONVENTIONS",
    "CochainMap",
    "alexander_whitney",
    "alexander_whitney_block",
    "shuffle",
    "shuffle_block",
    "shuffles",
    "verify_ez",
    "CochainComplex",
    "CosimplicialObject",
    "DoldKanSplitting",
    "NormalizedObject",
    "constant_object",
    "dold_kan_comparison",
    "normalize",
]
