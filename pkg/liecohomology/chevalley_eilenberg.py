import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

try:
    from ..core.errors import JacobiViolated, NotAutomorphism, ValidationError
    from ..exactlin import RationalMatrix
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import JacobiViolated, NotAutomorphism, ValidationError
    from exactlin import RationalMatrix

from .algebra import LieAlgebraData, LieGroupAction

logger = logging.getLogger(__name__)


def exterior_basis(n: int, p: int) -> List[Tuple[int, ...]]:
    """Increasing p-tuples of range(n), lexicographic"""
    return list(itertools.combinations(range(n), p))


@dataclass
class ChevalleyEilenbergComplex:
    """Λ^p𝐠* with d: Λ^p → Λ^{p+1} for p < max_degree, trivial coefficients ℚ"""
    algebra: LieAlgebraData
    max_degree: int
    bases: Dict[int, List[Tuple[int, ...]]]
    differentials: Dict[int, RationalMatrix]

    def dimension(self, p: int) -> int:
        return len(self.bases[p])


def _ce_differential(algebra: LieAlgebraData, p: int) -> RationalMatrix:
    """(dω)(x_0..x_p) = Σ_{i<j} (−1)^{i+j} ω([x_i, x_j], x_0..x̂_i..x̂_j..)"""
    n = algebra.dimension
    source = exterior_basis(n, p)
    target = exterior_basis(n, p + 1)
    position = {I: c for c, I in enumerate(source)}
    D = [[Fraction(0)] * len(source) for _ in range(len(target))]
    for r, J in enumerate(target):
        for i, j in itertools.combinations(range(p + 1), 2):
            rest = J[:i] + J[i + 1:j] + J[j + 1:]
            sign = -1 if (i + j) % 2 else 1
            for k, c in enumerate(algebra.constants[J[i]][J[j]]):
                if c == 0 or k in rest:
                    continue
                slot = sum(1 for v in rest if v < k)
                I = rest[:slot] + (k,) + rest[slot:]
                D[r][position[I]] += sign * (-1 if slot % 2 else 1) * c
    return RationalMatrix.from_rows(D, cols=len(source))


def chevalley_eilenberg(algebra: LieAlgebraData, n_max: Optional[int] = None) -> ChevalleyEilenbergComplex:
    n = algebra.dimension
    n_max = n if n_max is None else min(n_max, n)
    bases = {p: exterior_basis(n, p) for p in range(n_max + 1)}
    differentials = {p: _ce_differential(algebra, p) for p in range(n_max)}
    for p in range(1, n_max):
        if not (differentials[p] @ differentials[p - 1]).is_zero():
            raise JacobiViolated(f"d∘d ≠ 0 on Λ^{p - 1} of {algebra.name or 'the algebra'}", {"degree": p - 1})
    logger.debug(f"CE complex of {algebra.name or 'g'}: dims {[len(bases[p]) for p in bases]}")
    return ChevalleyEilenbergComplex(algebra, n_max, bases, differentials)


@dataclass
class LieCohomology:
    """H^p as a chosen basis of cocycle representatives complementing the coboundaries"""
    degree: int
    ambient_dim: int
    representatives: RationalMatrix
    boundaries: RationalMatrix

    @property
    def dimension(self) -> int:
        return self.representatives.cols

    def coordinates(self, cocycles: RationalMatrix) -> RationalMatrix:
        """Coordinates (dimension × k) of cocycle columns modulo coboundaries"""
        if self.dimension == 0:
            return RationalMatrix.zeros(0, cocycles.cols)
        system = self.representatives.hstack(self.boundaries)
        solutions = system.solve_many(cocycles.columns())
        if solutions is None:
            raise ValidationError(f"a vector is not a cocycle in degree {self.degree}")
        return RationalMatrix.from_columns([s[:self.dimension] for s in solutions], self.dimension)


def lie_cohomology(complex_: ChevalleyEilenbergComplex, p: int) -> LieCohomology:
    dim = complex_.dimension(p)
    if p < complex_.max_degree:
        cocycles = complex_.differentials[p].nullspace()
    else:
        cocycles = RationalMatrix.identity(dim)
    boundaries = complex_.differentials[p - 1] if p >= 1 else RationalMatrix.zeros(dim, 0)

    chosen = []
    current = boundaries
    rank = current.rank() if current.cols else 0
    for column in cocycles.columns():
        trial = current.hstack(RationalMatrix.from_columns([column], dim))
        trial_rank = trial.rank()
        if trial_rank > rank:
            chosen.append(column)
            current, rank = trial, trial_rank
    representatives = RationalMatrix.from_columns(chosen, dim)
    return LieCohomology(p, dim, representatives, boundaries)


def lie_cohomology_dims(algebra: LieAlgebraData, n_max: Optional[int] = None) -> List[int]:
    complex_ = chevalley_eilenberg(algebra, n_max)
    return [lie_cohomology(complex_, p).dimension for p in range(complex_.max_degree + 1)]


def exterior_action_matrix(matrix: RationalMatrix, n: int, p: int) -> RationalMatrix:
    """(g·ω)(x_1..x_p) = ω(ρ(g)⁻¹x_1, ..., ρ(g)⁻¹x_p) on Λ^p𝐠*: entry [J, I] = det(ρ(g)⁻¹[I, J])"""
    inverse = matrix.inverse()
    basis = exterior_basis(n, p)
    entries = [[inverse.submatrix(I, J).det() for I in basis] for J in basis]
    return RationalMatrix.from_rows(entries, cols=len(basis))


def induced_action_on_H(complex_: ChevalleyEilenbergComplex, action: LieGroupAction, p: int,
                        cohomology: Optional[LieCohomology] = None) -> List[RationalMatrix]:
    """Matrices of every group element on H^p in the coordinates of ``lie_cohomology``"""
    cohomology = cohomology or lie_cohomology(complex_, p)
    n = complex_.algebra.dimension
    group = action.group
    matrices = []
    for g in range(group.order):
        if cohomology.dimension == 0:
            matrices.append(RationalMatrix.zeros(0, 0))
            continue
        on_cochains = exterior_action_matrix(action.matrix(g), n, p)
        matrices.append(cohomology.coordinates(on_cochains @ cohomology.representatives))

    for g, h in itertools.product(range(group.order), range(group.order)):
        if matrices[g] @ matrices[h] != matrices[group.multiply(g, h)]:
            raise NotAutomorphism(f"induced action on H^{p} is not a representation at ({g}, {h})", {"g": g, "h": h})
    return matrices


def invariants(matrices: Sequence[RationalMatrix], dimension: int) -> RationalMatrix:
    """Basis (columns) of the common fixed space of the given matrices"""
    if dimension == 0:
        return RationalMatrix.zeros(0, 0)
    identity = RationalMatrix.identity(dimension)
    stacked = RationalMatrix.zeros(0, dimension)
    for M in matrices:
        stacked = stacked.vstack(M - identity)
    if stacked.rows == 0:
        return identity
    return stacked.nullspace()


def abelian_cohomology_dims(n: int) -> List[int]:
    return [comb(n, p) for p in range(n + 1)]
