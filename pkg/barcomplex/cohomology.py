import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .complex import CoefficientModule, GroupCochainComplex, build_bar_complex, pullback_matrix

try:
    from ..core.errors import ValidationError
    from ..core.size_guard import SizeGuard
    from ..exactlin import (
        FiniteAbelianGroupPresentation,
        homology_at,
        kernel_mod,
        map_respects_relations,
        presented_kernel,
        span_quotient,
        subgroup_order,
    )
    from ..fingroup import FiniteGroup
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import ValidationError
    from core.size_guard import SizeGuard
    from exactlin import (
        FiniteAbelianGroupPresentation,
        homology_at,
        kernel_mod,
        map_respects_relations,
        presented_kernel,
        span_quotient,
        subgroup_order,
    )
    from fingroup import FiniteGroup

logger = logging.getLogger(__name__)


def cohomology_of_complex(complex_: GroupCochainComplex, n: int) -> FiniteAbelianGroupPresentation:
    """H^n of a built bar complex; modules with relations are handled as quotients"""
    if n >= complex_.max_degree:
        raise ValidationError(f"degree {n} needs a complex built past degree {complex_.max_degree}")
    m = complex_.modulus
    rank = complex_.ranks[n]
    d_prev = complex_.differentials[n - 1] if n >= 1 else np.zeros((rank, 0), dtype=np.int64)
    d_next = complex_.differentials[n]
    if complex_.module.is_free:
        return homology_at(d_prev, d_next, m)

    relations_here = complex_.relations(n)
    relations_next = complex_.relations(n + 1)
    cycles = kernel_mod(np.hstack([d_next, relations_next]), m)[:rank, :]
    boundaries = np.hstack([d_prev, relations_here])
    return span_quotient(cycles, boundaries, m)


def group_cohomology(G: FiniteGroup, M, n: int, guard: Optional[SizeGuard] = None) -> FiniteAbelianGroupPresentation:
    """H^n(G, M) from the normalized bar complex; ``M`` is a modulus (trivial action) or a CoefficientModule"""
    if n < 1:
        raise ValidationError("group cohomology is computed in degrees n >= 1")
    complex_ = build_bar_complex(G, M, n + 1, guard=guard)
    result = cohomology_of_complex(complex_, n)
    logger.info(f"H^{n}({G.name or 'G'}, {complex_.module.name}) = {result}")
    return result


def cohomology_with_module_coefficients(G: FiniteGroup, M: CoefficientModule, n: int,
                                        guard: Optional[SizeGuard] = None) -> FiniteAbelianGroupPresentation:
    """H^n(G, M) for a finite module with a (possibly nontrivial) validated action"""
    M.validate(G)
    return group_cohomology(G, M, n, guard=guard)


@dataclass
class InducedMap:
    """A homomorphism between two presentations in coordinates (target.rank × source.rank)"""
    source: FiniteAbelianGroupPresentation
    target: FiniteAbelianGroupPresentation
    matrix: np.ndarray

    def apply(self, coordinates) -> np.ndarray:
        factors = np.array(self.target.invariant_factors, dtype=np.int64)
        return (self.matrix @ np.asarray(coordinates, dtype=np.int64)) % factors

    def then(self, other: "InducedMap") -> "InducedMap":
        """other ∘ self"""
        factors = np.array(other.target.invariant_factors, dtype=np.int64)[:, None]
        product = (other.matrix @ self.matrix) % factors if other.target.rank else \
            np.zeros((0, self.source.rank), dtype=np.int64)
        return InducedMap(self.source, other.target, product)

    def is_identity(self) -> bool:
        if self.source.invariant_factors != self.target.invariant_factors:
            return False
        factors = np.array(self.target.invariant_factors, dtype=np.int64)[:, None]
        return bool(np.all((self.matrix - np.eye(self.target.rank, dtype=np.int64)) % factors == 0))

    def is_well_defined(self) -> bool:
        return map_respects_relations(self.source, self.target, self.matrix)

    def is_isomorphism(self) -> bool:
        if self.source.order != self.target.order:
            return False
        kernel = presented_kernel(self.source, self.target, self.matrix)
        return subgroup_order(self.source, kernel) == 1 and \
            subgroup_order(self.target, self.matrix) == self.target.order


def _pulled_back_module(module: CoefficientModule, images: np.ndarray) -> CoefficientModule:
    return CoefficientModule(module.modulus, module.rank, module.action[images], module.relations, module.name)


def induced_map(source_group: FiniteGroup, target_group: FiniteGroup, images: Sequence[int], M, n: int,
                guard: Optional[SizeGuard] = None) -> InducedMap:
    """Pullback H^n(target_group, M) → H^n(source_group, φ*M) along φ given by ``images``"""
    images = np.asarray(images, dtype=np.int64)
    if not source_group.is_homomorphism(target_group, images):
        raise ValidationError("the given images do not define a group homomorphism")
    module = M if isinstance(M, CoefficientModule) else CoefficientModule.trivial(target_group.order, int(M))
    pulled = _pulled_back_module(module, images)

    upstairs = group_cohomology(target_group, module, n, guard=guard)
    downstairs = group_cohomology(source_group, pulled, n, guard=guard)
    P = pullback_matrix(source_group, target_group, images, n, rank=module.rank)
    pulled_generators = (P @ upstairs.generators) % module.modulus if upstairs.rank else \
        np.zeros((P.shape[0], 0), dtype=np.int64)
    matrix = downstairs.reduce_many(pulled_generators)
    return InducedMap(upstairs, downstairs, matrix)


def coefficient_change(G: FiniteGroup, n: int, m: int, m_prime: int,
                       guard: Optional[SizeGuard] = None) -> InducedMap:
    """H^n(G, ℤ/m) → H^n(G, ℤ/m') induced by x ↦ (m'/m)·x, for m | m'"""
    if m_prime % m:
        raise ValidationError(f"{m} does not divide {m_prime}")
    source = group_cohomology(G, m, n, guard=guard)
    target = group_cohomology(G, m_prime, n, guard=guard)
    images = (source.generators * (m_prime // m)) % m_prime
    return InducedMap(source, target, target.reduce_many(images))


@dataclass
class StabilizationReport:
    degree: int
    modulus: int
    doubled_modulus: int
    invariant_factors: tuple
    doubled_invariant_factors: tuple
    is_isomorphism: bool


def stabilization_report(G: FiniteGroup, n: int, m: int, guard: Optional[SizeGuard] = None) -> StabilizationReport:
    """Compare coefficients ℤ/m and ℤ/2m; an isomorphism means m already sees all |G|-torsion"""
    change = coefficient_change(G, n, m, 2 * m, guard=guard)
    report = StabilizationReport(
        degree=n,
        modulus=m,
        doubled_modulus=2 * m,
        invariant_factors=change.source.invariant_factors,
        doubled_invariant_factors=change.target.invariant_factors,
        is_isomorphism=change.is_isomorphism(),
    )
    if not report.is_isomorphism:
        logger.warning(f"H^{n}({G.name or 'G'}) has not stabilized at modulus {m}")
    return report
