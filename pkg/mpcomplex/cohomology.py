import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from .double_complex import MPCohomologyClass, MPDoubleComplex, build_double_complex

try:
    from ..barcomplex import CoefficientModule, group_cohomology, pullback_matrix
    from ..core.errors import InsufficientBounds, NonTrivialRightAction, NotACocycle
    from ..core.size_guard import SizeGuard
    from ..exactlin import (
        FiniteAbelianGroupPresentation,
        homology_at,
        kernel_mod,
        presented_kernel,
        span_contains,
        span_quotient,
        subgroup_order,
        subgroups_equal,
        trivial_presentation,
    )
    from ..fingroup import GroupMatchedPair
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from barcomplex import CoefficientModule, group_cohomology, pullback_matrix
    from core.errors import InsufficientBounds, NonTrivialRightAction, NotACocycle
    from core.size_guard import SizeGuard
    from exactlin import (
        FiniteAbelianGroupPresentation,
        homology_at,
        kernel_mod,
        presented_kernel,
        span_contains,
        span_quotient,
        subgroup_order,
        subgroups_equal,
        trivial_presentation,
    )
    from fingroup import GroupMatchedPair

logger = logging.getLogger(__name__)


def _complex_for_degree(mp: GroupMatchedPair, m: int, i: int, p_max: Optional[int], q_max: Optional[int],
                        guard: Optional[SizeGuard], complex_: Optional[MPDoubleComplex]) -> MPDoubleComplex:
    if i < 1:
        raise InsufficientBounds("matched pair cohomology starts in degree 1", {"degree": i})
    if complex_ is not None:
        return complex_
    p_max = i + 1 if p_max is None else p_max
    q_max = i + 1 if q_max is None else q_max
    if p_max < i + 1 or q_max < i + 1:
        raise InsufficientBounds(
            f"ℋ^{i} needs bounds p, q ≥ {i + 1}, got ({p_max}, {q_max})",
            {"degree": i, "bounds": [p_max, q_max]},
        )
    return build_double_complex(mp, m, p_max, q_max, guard=guard, check=False)


def total_cohomology(complex_: MPDoubleComplex, i: int) -> FiniteAbelianGroupPresentation:
    """ℋ^i = H^{i+1} of the total complex of the cells with p, q ≥ 1"""
    n = i + 1
    d_in = complex_.total_differential(n - 1) if n - 1 >= 2 else np.zeros((complex_.tot_dim(n), 0), dtype=np.int64)
    d_out = complex_.total_differential(n)
    return homology_at(d_in, d_out, complex_.modulus)


def matched_pair_cohomology(mp: GroupMatchedPair, m: int, i: int, p_max: Optional[int] = None,
                            q_max: Optional[int] = None, guard: Optional[SizeGuard] = None,
                            complex_: Optional[MPDoubleComplex] = None) -> FiniteAbelianGroupPresentation:
    complex_ = _complex_for_degree(mp, m, i, p_max, q_max, guard, complex_)
    result = total_cohomology(complex_, i)
    logger.info(f"ℋ^{i}({mp.name or 'T, N'}; ℤ/{m}) = {result}")
    return result


def mp_cohomology_classes(complex_: MPDoubleComplex, i: int,
                          presentation: FiniteAbelianGroupPresentation) -> List[MPCohomologyClass]:
    """Generators of ℋ^i split into their bidegree components"""
    classes = []
    for k in range(presentation.rank):
        coordinates = tuple(1 if j == k else 0 for j in range(presentation.rank))
        vector = presentation.generators[:, k]
        classes.append(MPCohomologyClass(i, complex_.split(i + 1, vector), coordinates))
    return classes


def is_tot_cocycle(complex_: MPDoubleComplex, i: int, vector: np.ndarray) -> bool:
    return not np.any((complex_.total_differential(i + 1) @ vector) % complex_.modulus)


@dataclass
class RestrictedSubgroup:
    """ℋ^i_p with its embedding matrix into ℋ^i (ℋ^i coordinates of each generator)"""
    degree: int
    p: int
    presentation: FiniteAbelianGroupPresentation
    ambient: FiniteAbelianGroupPresentation
    embedding: np.ndarray

    def is_injective(self) -> bool:
        kernel = presented_kernel(self.presentation, self.ambient, self.embedding)
        return subgroup_order(self.presentation, kernel) == 1


def restricted_subgroup(mp: GroupMatchedPair, m: int, i: int, p: int, p_max: Optional[int] = None,
                        q_max: Optional[int] = None, guard: Optional[SizeGuard] = None,
                        complex_: Optional[MPDoubleComplex] = None) -> RestrictedSubgroup:
    """Classes of ℋ^i with a representative supported in the single bidegree (p, i+1-p)"""
    if not 1 <= p <= i:
        raise InsufficientBounds(f"p must satisfy 1 ≤ p ≤ {i}, got {p}", {"degree": i, "p": p})
    complex_ = _complex_for_degree(mp, m, i, p_max, q_max, guard, complex_)
    q = i + 1 - p
    n = i + 1

    cocycle_condition = np.vstack([complex_.delta_T(p, q), complex_.delta_N(p, q)])
    local_cycles = kernel_mod(cocycle_condition, m)
    offset = complex_.tot_offsets(n)[(p, q)]
    cycles = np.zeros((complex_.tot_dim(n), local_cycles.shape[1]), dtype=np.int64)
    cycles[offset:offset + complex_.dim(p, q), :] = local_cycles

    boundaries = complex_.total_differential(n - 1) if n - 1 >= 2 else np.zeros((complex_.tot_dim(n), 0), dtype=np.int64)
    presentation = span_quotient(cycles, boundaries, m)
    ambient = total_cohomology(complex_, i)
    embedding = ambient.reduce_many(presentation.generators) if presentation.rank else \
        np.zeros((ambient.rank, 0), dtype=np.int64)
    logger.info(f"ℋ^{i}_{p}({mp.name or 'T, N'}; ℤ/{m}) = {presentation}")
    return RestrictedSubgroup(i, p, presentation, ambient, embedding)


def _require_trivial_right_action(mp: GroupMatchedPair) -> None:
    if not mp.right_is_trivial:
        raise NonTrivialRightAction(
            f"{mp.name or 'the pair'} has a nontrivial action of N on T",
            {"pair": mp.name},
        )


def bidegree_cocycles(complex_: MPDoubleComplex, i: int, j: int) -> np.ndarray:
    """Z^{i,j}: α with δ_N α = 0 and δ_T α = δ_N β for some β ∈ C^{i+1,j-1}"""
    m = complex_.modulus
    dN = complex_.delta_N(i, j)
    dT = complex_.delta_T(i, j)
    dN_next = complex_.delta_N(i + 1, j - 1)
    width_alpha, width_beta = dN.shape[1], dN_next.shape[1]
    system = np.zeros((dN.shape[0] + dT.shape[0], width_alpha + width_beta), dtype=np.int64)
    system[:dN.shape[0], :width_alpha] = dN
    system[dN.shape[0]:, :width_alpha] = dT
    system[dN.shape[0]:, width_alpha:] = (-dN_next) % m
    return kernel_mod(system, m)[:width_alpha, :]


def bidegree_coboundaries(complex_: MPDoubleComplex, i: int, j: int) -> np.ndarray:
    """B^{i,j} = δ_N C^{i,j-1} + δ_T(ker δ_N on C^{i-1,j})"""
    m = complex_.modulus
    vertical = complex_.delta_N(i, j - 1)
    closed = kernel_mod(complex_.delta_N(i - 1, j), m)
    horizontal = (complex_.delta_T(i - 1, j) @ closed) % m if closed.size else \
        np.zeros((complex_.dim(i, j), 0), dtype=np.int64)
    return np.hstack([vertical, horizontal])


def bidegree_cohomology(mp: GroupMatchedPair, m: int, i: int, j: int, guard: Optional[SizeGuard] = None,
                        complex_: Optional[MPDoubleComplex] = None) -> FiniteAbelianGroupPresentation:
    """H^{i,j} = Z^{i,j}/B^{i,j}; needs the action of N on T to be trivial"""
    _require_trivial_right_action(mp)
    if i < 1 or j < 1:
        raise InsufficientBounds("bidegree cohomology needs i, j ≥ 1", {"bidegree": [i, j]})
    if complex_ is None:
        complex_ = build_double_complex(mp, m, i + 1, j + 1, guard=guard, check=False)
    cycles = bidegree_cocycles(complex_, i, j)
    boundaries = bidegree_coboundaries(complex_, i, j)
    result = span_quotient(cycles, boundaries, m)
    logger.info(f"H^{{{i},{j}}}({mp.name or 'T, N'}; ℤ/{m}) = {result}")
    return result


@dataclass
class PiMap:
    """π: ℋ² → H^{1,2}, (f1, f2) ↦ [f1]"""
    source: FiniteAbelianGroupPresentation
    target: FiniteAbelianGroupPresentation
    matrix: np.ndarray
    complex_: MPDoubleComplex

    def kernel(self) -> np.ndarray:
        return presented_kernel(self.source, self.target, self.matrix)


def pi_map(mp: GroupMatchedPair, m: int, guard: Optional[SizeGuard] = None,
           complex_: Optional[MPDoubleComplex] = None) -> PiMap:
    _require_trivial_right_action(mp)
    complex_ = complex_ or build_double_complex(mp, m, 3, 3, guard=guard, check=False)
    source = total_cohomology(complex_, 2)
    target = bidegree_cohomology(mp, m, 1, 2, complex_=complex_)
    first_components = np.zeros((complex_.dim(1, 2), source.rank), dtype=np.int64)
    for k in range(source.rank):
        first_components[:, k] = complex_.split(3, source.generators[:, k])[1]
    if not span_contains(bidegree_cocycles(complex_, 1, 2), first_components, m):
        raise NotACocycle("a class of ℋ² has a first component outside Z^{1,2}", {"map": "pi"})
    matrix = target.reduce_many(first_components) if source.rank else np.zeros((target.rank, 0), dtype=np.int64)
    return PiMap(source, target, matrix, complex_)


@dataclass
class PiSequenceReport:
    """H²(N) ⊕ ℋ²_2 → ℋ² → H^{1,2}: the composite vanishes and the image equals the kernel"""
    h2_N: FiniteAbelianGroupPresentation
    h2_restricted: FiniteAbelianGroupPresentation
    h2_total: FiniteAbelianGroupPresentation
    h12: FiniteAbelianGroupPresentation
    image_generators: np.ndarray
    kernel_generators: np.ndarray
    composite_is_zero: bool
    is_exact: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "H2(N)": list(self.h2_N.invariant_factors),
            "H2_2": list(self.h2_restricted.invariant_factors),
            "H2": list(self.h2_total.invariant_factors),
            "H^{1,2}": list(self.h12.invariant_factors),
            "composite_is_zero": self.composite_is_zero,
            "is_exact": self.is_exact,
        }


def pi_sequence_report(mp: GroupMatchedPair, m: int, guard: Optional[SizeGuard] = None) -> PiSequenceReport:
    _require_trivial_right_action(mp)
    complex_ = build_double_complex(mp, m, 3, 3, guard=guard, check=False)
    pi = pi_map(mp, m, complex_=complex_)
    h2_total = pi.source

    h2_N = group_cohomology(mp.N, m, 2, guard=guard)
    # a cocycle b on N gives the class of (-δ_T b, 0)
    lifted = (-(complex_.delta_T(0, 2) @ h2_N.generators)) % m if h2_N.rank else \
        np.zeros((complex_.dim(1, 2), 0), dtype=np.int64)
    lifted_classes = np.zeros((h2_total.rank, lifted.shape[1]), dtype=np.int64)
    for k in range(lifted.shape[1]):
        lifted_classes[:, k] = h2_total.reduce(complex_.join(3, {1: lifted[:, k]}))
    restricted = restricted_subgroup(mp, m, 2, 2, complex_=complex_)

    image = np.hstack([lifted_classes, restricted.embedding]) if h2_total.rank else np.zeros((0, 0), dtype=np.int64)
    kernel = pi.kernel()
    factors = np.array(pi.target.invariant_factors, dtype=np.int64)[:, None]
    composite = (pi.matrix @ image) % factors if pi.target.rank and image.size else np.zeros((0, 0), dtype=np.int64)
    report = PiSequenceReport(
        h2_N=h2_N,
        h2_restricted=restricted.presentation,
        h2_total=h2_total,
        h12=pi.target,
        image_generators=image,
        kernel_generators=kernel,
        composite_is_zero=not np.any(composite),
        is_exact=subgroups_equal(h2_total, image, kernel),
    )
    logger.info(f"π-sequence for {mp.name or 'pair'} mod {m}: exact={report.is_exact}")
    return report


def cohomology_module_of_N(mp: GroupMatchedPair, m: int, j: int,
                           guard: Optional[SizeGuard] = None) -> CoefficientModule:
    """H^j(N, ℤ/m) as a T-module, t acting by pullback along n ↦ t⁻¹▷n"""
    _require_trivial_right_action(mp)
    hj = group_cohomology(mp.N, m, j, guard=guard)
    action = np.zeros((mp.T.order, hj.rank, hj.rank), dtype=np.int64)
    if hj.rank:
        for t in range(mp.T.order):
            P = pullback_matrix(mp.N, mp.N, mp.act_left[mp.T.inverse(t)], j)
            action[t] = hj.reduce_many((P @ hj.generators) % m)
    return CoefficientModule.from_presentation(hj, action, name=f"H^{j}(N, ℤ/{m})")


def iterated_cohomology(mp: GroupMatchedPair, m: int, i: int, j: int,
                        guard: Optional[SizeGuard] = None) -> FiniteAbelianGroupPresentation:
    """H^i(T, H^j(N, ℤ/m)), computed without the double complex"""
    module = cohomology_module_of_N(mp, m, j, guard=guard)
    if module.rank == 0:
        return trivial_presentation(0, m)
    result = group_cohomology(mp.T, module.validate(mp.T), i, guard=guard)
    logger.info(f"H^{i}({mp.T.name or 'T'}, H^{j}(N)) = {result} for {mp.name or 'pair'} mod {m}")
    return result
