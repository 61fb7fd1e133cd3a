"""Lie algebras by structure constants and finite groups acting on them by automorphisms."""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

try:
    from ..core.errors import JacobiViolated, NotAutomorphism, ValidationError
    from ..exactlin import RationalMatrix
    from ..fingroup import FiniteGroup
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import JacobiViolated, NotAutomorphism, ValidationError
    from exactlin import RationalMatrix
    from fingroup import FiniteGroup

logger = logging.getLogger(__name__)

Vector = List[Fraction]


@dataclass(frozen=True)
class LieAlgebraData:
    """[e_i, e_j] = Σ_k constants[i][j][k] e_k over ℚ"""
    dimension: int
    constants: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    name: str = ""

    def bracket_basis(self, i: int, j: int) -> Vector:
        return list(self.constants[i][j])

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dimension
        out = [Fraction(0)] * n
        for i, j in itertools.product(range(n), range(n)):
            coefficient = Fraction(x[i]) * Fraction(y[j])
            if coefficient == 0:
                continue
            for k in range(n):
                out[k] += coefficient * self.constants[i][j][k]
        return out

    @property
    def is_abelian(self) -> bool:
        return all(v == 0 for plane in self.constants for row in plane for v in row)


def _zero_vector(n: int) -> Vector:
    return [Fraction(0)] * n


def validate_lie_algebra(dimension: int, constants, name: str = "") -> LieAlgebraData:
    """Check antisymmetry and the Jacobi identity on every basis triple"""
    n = dimension
    table = tuple(tuple(tuple(Fraction(constants[i][j][k]) for k in range(n)) for j in range(n)) for i in range(n))
    algebra = LieAlgebraData(n, table, name)

    for i, j in itertools.product(range(n), range(n)):
        if any(table[i][j][k] != -table[j][i][k] for k in range(n)):
            raise ValidationError(f"bracket is not antisymmetric at (e{i}, e{j})", {"i": i, "j": j})

    basis = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    for i, j, k in itertools.combinations(range(n), 3):
        total = _zero_vector(n)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            term = algebra.bracket(algebra.bracket_basis(a, b), basis[c])
            total = [s + t for s, t in zip(total, term)]
        if any(total):
            raise JacobiViolated(f"Jacobi identity fails on (e{i}, e{j}, e{k})", {"triple": [i, j, k]})
    logger.debug(f"Lie algebra {name or ''} of dimension {n} validated")
    return algebra


def from_brackets(dimension: int, brackets: Mapping[Tuple[int, int], Mapping[int, object]],
                  name: str = "") -> LieAlgebraData:
    """Build from the brackets [e_i, e_j] with i < j; the rest follows by antisymmetry"""
    n = dimension
    constants = [[_zero_vector(n) for _ in range(n)] for _ in range(n)]
    for (i, j), value in brackets.items():
        outside = [index for index in (i, j, *value) if not 0 <= index < n]
        if outside:
            raise ValidationError(f"basis index {outside[0]} outside e0..e{n - 1} in [e{i}, e{j}]",
                                  {"pair": [i, j], "index": outside[0], "dimension": n})
        if i == j:
            raise ValidationError(f"[e{i}, e{i}] must vanish", {"i": i})
        for k, c in value.items():
            constants[i][j][k] += Fraction(c)
            constants[j][i][k] -= Fraction(c)
    return validate_lie_algebra(n, constants, name)


def abelian(n: int) -> LieAlgebraData:
    return validate_lie_algebra(n, [[_zero_vector(n) for _ in range(n)] for _ in range(n)], name=f"k^{n}")


def _matrix_unit(n: int, i: int, j: int) -> List[List[Fraction]]:
    return [[Fraction(int(r == i and c == j)) for c in range(n)] for r in range(n)]


def sl_basis(n: int) -> List[List[List[Fraction]]]:
    """E_ij (i ≠ j, row-major) followed by H_i = E_ii − E_{i+1,i+1}"""
    basis = [_matrix_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    for i in range(n - 1):
        H = _matrix_unit(n, i, i)
        H[i + 1][i + 1] = Fraction(-1)
        basis.append(H)
    return basis


def sl_coordinates(n: int, X: Sequence[Sequence]) -> Vector:
    """Coordinates of a traceless matrix in ``sl_basis(n)``"""
    X = [[Fraction(v) for v in row] for row in X]
    if sum(X[i][i] for i in range(n)) != 0:
        raise ValidationError("matrix is not traceless")
    coordinates = [X[i][j] for i in range(n) for j in range(n) if i != j]
    running = Fraction(0)
    for i in range(n - 1):
        running += X[i][i]
        coordinates.append(running)
    return coordinates


def _matmul(A, B):
    size = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(size)), Fraction(0)) for j in range(size)] for i in range(size)]


def sl_structure_constants(n: int) -> LieAlgebraData:
    basis = sl_basis(n)
    d = len(basis)
    constants = [[_zero_vector(d) for _ in range(d)] for _ in range(d)]
    for a, b in itertools.product(range(d), range(d)):
        AB, BA = _matmul(basis[a], basis[b]), _matmul(basis[b], basis[a])
        commutator = [[AB[i][j] - BA[i][j] for j in range(n)] for i in range(n)]
        constants[a][b] = sl_coordinates(n, commutator)
    return validate_lie_algebra(d, constants, name=f"sl{n}")


@dataclass
class LieGroupAction:
    """ρ: G → Aut(𝐠), one matrix per group element acting on coordinate columns"""
    group: FiniteGroup
    matrices: List[RationalMatrix]
    name: str = ""

    def matrix(self, g: int) -> RationalMatrix:
        return self.matrices[g]


def validate_lie_action(algebra: LieAlgebraData, group: FiniteGroup, matrices: Sequence[RationalMatrix],
                        name: str = "") -> LieGroupAction:
    """Representation property and bracket preservation, checked on all elements and basis pairs"""
    n = algebra.dimension
    matrices = list(matrices)
    if len(matrices) != group.order or any(M.shape != (n, n) for M in matrices):
        raise ValidationError(f"need {group.order} matrices of shape {n}x{n}")
    if matrices[0] != RationalMatrix.identity(n):
        raise NotAutomorphism("the identity element does not act trivially", {"element": 0})
    for g, h in itertools.product(range(group.order), range(group.order)):
        if matrices[g] @ matrices[h] != matrices[group.multiply(g, h)]:
            raise NotAutomorphism(f"ρ({g})ρ({h}) ≠ ρ({g}·{h})", {"g": g, "h": h})

    for g in range(group.order):
        columns = matrices[g].columns()
        for i, j in itertools.combinations(range(n), 2):
            image_of_bracket = matrices[g] @ RationalMatrix.from_columns([algebra.bracket_basis(i, j)], n)
            bracket_of_images = algebra.bracket(columns[i], columns[j])
            if image_of_bracket.column(0) != bracket_of_images:
                raise NotAutomorphism(f"element {g} does not preserve [e{i}, e{j}]", {"element": g, "pair": [i, j]})
    return LieGroupAction(group, matrices, name)


def action_from_generators(algebra: LieAlgebraData, group: FiniteGroup,
                           generators: Mapping[int, RationalMatrix], name: str = "") -> LieGroupAction:
    """Extend matrices given on generating elements to the whole group, then validate"""
    n = algebra.dimension
    known: Dict[int, RationalMatrix] = {0: RationalMatrix.identity(n)}
    frontier = [0]
    while frontier:
        g = frontier.pop()
        for s, M in generators.items():
            h = group.multiply(g, s)
            candidate = known[g] @ M
            if h not in known:
                known[h] = candidate
                frontier.append(h)
            elif known[h] != candidate:
                raise NotAutomorphism(f"generator matrices violate a relation at element {h}", {"element": h})
    if len(known) != group.order:
        raise ValidationError("the given elements do not generate the group", {"reached": sorted(known)})
    return validate_lie_action(algebra, group, [known[g] for g in range(group.order)], name)


def conjugation_action(n: int, group: FiniteGroup, element_matrices: Sequence[Sequence[Sequence]],
                       name: str = "") -> LieGroupAction:
    """G acting on sl_n by X ↦ P_g X P_g⁻¹ for given invertible n × n matrices P_g"""
    algebra = sl_structure_constants(n)
    basis = sl_basis(n)
    matrices = []
    for P in element_matrices:
        P_q = RationalMatrix.from_rows(P)
        P_inv = P_q.inverse()
        columns = []
        for X in basis:
            conjugated = (P_q @ RationalMatrix.from_rows(X) @ P_inv).to_rows()
            columns.append(sl_coordinates(n, conjugated))
        matrices.append(RationalMatrix.from_columns(columns, algebra.dimension))
    return validate_lie_action(algebra, group, matrices, name)


def permutation_matrix(images: Sequence[int]) -> List[List[int]]:
    """Matrix sending e_i to e_{images[i]}"""
    size = len(images)
    return [[int(images[c] == r) for c in range(size)] for r in range(size)]
