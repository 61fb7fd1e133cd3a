"""Error hierarchy shared by every computation package."""

from typing import Any, Dict, Optional


class MatchedPairError(Exception):
    """Base class: every error carries a machine-readable code and an optional witness"""

    code = "matched_pair_error"

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_dict(self) -> Dict[str, Any]:
        payload = {"code": self.code, "message": self.message}
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


class CompositionNotZero(MatchedPairError):
    code = "composition_not_zero"


class NotAssociative(MatchedPairError):
    code = "not_associative"


class NoIdentity(MatchedPairError):
    code = "no_identity"


class NoInverse(MatchedPairError):
    code = "no_inverse"


class AxiomViolation(MatchedPairError):
    code = "axiom_violation"

    def __init__(self, axiom: str, witness: Any):
        super().__init__(f"matched pair axiom '{axiom}' fails at {witness}", witness)
        self.axiom = axiom

    def to_dict(self) -> Dict[str, Any]:
        payload = super().to_dict()
        payload["axiom"] = self.axiom
        return payload


class NotSubgroup(MatchedPairError):
    code = "not_subgroup"


class NotExactFactorization(MatchedPairError):
    code = "not_exact_factorization"


class InsufficientBounds(MatchedPairError):
    code = "insufficient_bounds"


class NonTrivialRightAction(MatchedPairError):
    code = "nontrivial_right_action"


class NotACocycle(MatchedPairError):
    code = "not_a_cocycle"


class OutputCocycleCheckFailed(MatchedPairError):
    code = "output_cocycle_check_failed"


class CompatibilityFailed(MatchedPairError):
    code = "compatibility_failed"


class JacobiViolated(MatchedPairError):
    code = "jacobi_violated"


class NotAutomorphism(MatchedPairError):
    code = "not_automorphism"


class ActionsIncompatible(MatchedPairError):
    code = "actions_incompatible"


class SplittingFailed(MatchedPairError):
    code = "splitting_failed"


class NotChainMap(MatchedPairError):
    code = "not_chain_map"


class CosimplicialIdentityFailed(MatchedPairError):
    code = "cosimplicial_identity_failed"


class SizeGuardExceeded(MatchedPairError):
    code = "size_guard_exceeded"


class ValidationError(MatchedPairError):
    code = "validation_error"


class ParseError(MatchedPairError):
    code = "parse_error"

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}", {"line": line, "column": column})
        self.line = line
        self.column = column
