from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class ComputationStep:
    """Represents a single timed stage of a computation run"""
    step_number: int
    description: str
    action_type: str  # "parse", "validate", "build_complex", "cohomology", "exactness", "lie", "cosimplicial", "report"
    inputs: Dict[str, Any]
    outputs: Dict[str, Any]
    notes: str
    timestamp: str
    duration_seconds: float


@dataclass
class PresentationSummary:
    """Serializable view of a finite abelian group presentation"""
    label: str
    invariant_factors: List[int]
    order: int
    ambient_dim: int

    @classmethod
    def of(cls, label: str, presentation) -> "PresentationSummary":
        return cls(
            label=label,
            invariant_factors=[int(d) for d in presentation.invariant_factors],
            order=int(presentation.order),
            ambient_dim=int(presentation.ambient_dim),
        )

    def describe(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " ⊕ ".join(f"ℤ/{d}" for d in self.invariant_factors)


@dataclass
class ExactnessVerdict:
    """im = ker at one position of a sequence"""
    position: str
    image_invariant_factors: List[int]
    kernel_invariant_factors: List[int]
    exact: bool


@dataclass
class KacSequenceReport:
    """The low-degree Kac sequence of a matched pair with per-position verdicts"""
    pair: str
    modulus: int
    convention: str
    groups: Dict[str, PresentationSummary]
    maps: Dict[str, List[List[int]]]
    verdicts: List[ExactnessVerdict]
    injective_at_start: bool
    complex_property: Dict[str, bool]
    well_defined: Dict[str, bool]
    psi_outputs_are_cocycles: bool
    h3_computed: bool

    @property
    def all_exact(self) -> bool:
        return self.injective_at_start and all(v.exact for v in self.verdicts)


@dataclass
class Method6Report:
    """Pieces of ℋ² determined by the group-plus-Lie-algebra method"""
    configuration: str
    modulus: int
    lie_dimension: int
    h2_lie_dim: int
    h2_lie_T_invariant_dim: int
    h2_lie_N_invariant_dim: int
    h2_lie_full_invariant_dim: int
    h2_GN: PresentationSummary
    h2_GN_T_invariant: PresentationSummary
    lie_quotient_dim: int
    group_quotient: PresentationSummary
    orders_coprime: bool
    phi_is_isomorphism: bool
    conclusion: List[str] = field(default_factory=list)

    @property
    def invariant_dims(self) -> List[int]:
        """Dimensions of the G(T)-, G(N)- and full invariants of H²(𝐠)"""
        return [self.h2_lie_T_invariant_dim, self.h2_lie_N_invariant_dim, self.h2_lie_full_invariant_dim]


@dataclass
class EZReport:
    """Eilenberg–Zilber and Dold–Kan checks on a cosimplicial bicomplex"""
    pair: str
    modulus: int
    max_degree: int
    convention: str
    tot_cohomology: Dict[int, PresentationSummary]
    diag_cohomology: Dict[int, PresentationSummary]
    alexander_whitney_is_chain_map: bool
    shuffle_is_chain_map: bool
    mutually_inverse: Dict[int, bool]
    dold_kan_splitting: Dict[int, bool]
    dold_kan_cohomology: Dict[int, bool]

    @property
    def verified(self) -> bool:
        return (
            self.alexander_whitney_is_chain_map
            and self.shuffle_is_chain_map
            and all(self.mutually_inverse.values())
            and all(self.dold_kan_splitting.values())
            and all(self.dold_kan_cohomology.values())
        )


@dataclass
class Report:
    """Final report of one command-line run"""
    command: str
    input_path: Optional[str]
    flags: Dict[str, Any]
    results: Dict[str, Any]
    steps_taken: List[ComputationStep]
    errors: List[Dict[str, Any]]
    exit_code: int
    timestamp: str
    total_duration: float
