"""
Core data structures, settings and errors shared by the computation packages.
"""

from .config import Settings
from .errors import (
    ActionsIncompatible,
    AxiomViolation,
    CompatibilityFailed,
    CompositionNotZero,
    CosimplicialIdentityFailed,
    InsufficientBounds,
    JacobiViolated,
    MatchedPairError,
    NoIdentity,
    NoInverse,
    NonTrivialRightAction,
    NotACocycle,
    NotAssociative,
    NotAutomorphism,
    NotChainMap,
    NotExactFactorization,
    NotSubgroup,
    OutputCocycleCheckFailed,
    ParseError,
    SizeGuardExceeded,
    SplittingFailed,
    ValidationError,
)
from .models import (
    ComputationStep,
    EZReport,
    ExactnessVerdict,
    KacSequenceReport,
    Method6Report,
    PresentationSummary,
    Report,
)
from .size_guard import SizeGuard, default_guard, set_default_guard

__all__ = [
    'Settings',
    'ActionsIncompatible', 'AxiomViolation', 'CompatibilityFailed', 'CompositionNotZero',
    'CosimplicialIdentityFailed', 'InsufficientBounds', 'JacobiViolated', 'MatchedPairError',
    'NoIdentity', 'NoInverse', 'NonTrivialRightAction', 'NotACocycle', 'NotAssociative',
    'NotAutomorphism', 'NotChainMap', 'NotExactFactorization', 'NotSubgroup',
    'OutputCocycleCheckFailed', 'ParseError', 'SizeGuardExceeded', 'SplittingFailed', 'ValidationError',
    'ComputationStep', 'EZReport', 'ExactnessVerdict', 'KacSequenceReport', 'Method6Report',
    'PresentationSummary', 'Report',
    'SizeGuard', 'default_guard', 'set_default_guard',
]
