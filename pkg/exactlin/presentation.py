"""Finite abelian group presentations of subquotients of (ℤ/m)^n with element tracking."""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .modular import (
    ModularSolver,
    as_mod_matrix,
    diagonalize_mod,
    kernel_mod,
    spans_equal,
    submodule_order,
    submodule_orders,
)
from .snf import format_invariant_factors, invariant_factors_from_orders, smith_decomposition

try:
    from ..core.errors import CompositionNotZero
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import CompositionNotZero

logger = logging.getLogger(__name__)

Reducer = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FiniteAbelianGroupPresentation:
    """⊕ ℤ/d_i with d_i | d_{i+1}, realized inside an ambient (ℤ/m)^dim.

    ``generators`` holds one ambient representative per invariant factor (as
    columns); ``reducer`` maps ambient columns lying in the subgroup to
    coordinate columns.
    """
    modulus: int
    ambient_dim: int
    invariant_factors: Tuple[int, ...]
    generators: np.ndarray
    reducer: Reducer = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        total = 1
        for d in self.invariant_factors:
            total *= d
        return total

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def reduce_many(self, X) -> np.ndarray:
        X = as_mod_matrix(X, self.modulus, rows=self.ambient_dim)
        if not self.invariant_factors:
            return np.zeros((0, X.shape[1]), dtype=np.int64)
        coords = np.asarray(self.reducer(X), dtype=np.int64)
        return coords % np.array(self.invariant_factors, dtype=np.int64)[:, None]

    def reduce(self, x) -> np.ndarray:
        return self.reduce_many(np.asarray(x, dtype=np.int64).reshape(-1, 1))[:, 0]

    def element(self, coordinates: Sequence[int]) -> np.ndarray:
        """Ambient representative of the class with the given coordinates"""
        coords = np.asarray(coordinates, dtype=np.int64).reshape(-1)
        if coords.size != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {coords.size}")
        if self.rank == 0:
            return np.zeros(self.ambient_dim, dtype=np.int64)
        return (self.generators @ coords) % self.modulus

    def embed(self, coordinates) -> np.ndarray:
        """Injective embedding of ⊕ℤ/d_i into (ℤ/m)^rank, coordinate i scaled by m/d_i"""
        coords = as_mod_matrix(coordinates, self.modulus, rows=self.rank)
        scales = np.array([self.modulus // d for d in self.invariant_factors], dtype=np.int64)
        return (coords * scales[:, None]) % self.modulus

    def coordinates_equal(self, a, b) -> bool:
        factors = np.array(self.invariant_factors, dtype=np.int64)
        return bool(np.all((np.asarray(a) - np.asarray(b)) % factors == 0))

    def direct_sum(self, other: "FiniteAbelianGroupPresentation") -> "FiniteAbelianGroupPresentation":
        """Presentation of self ⊕ other on the concatenated ambient space"""
        if other.modulus != self.modulus:
            raise ValueError("direct sum needs a common modulus")
        m = self.modulus
        dim_a, dim_b = self.ambient_dim, other.ambient_dim
        raw_orders = list(self.invariant_factors) + list(other.invariant_factors)
        raw_generators = np.zeros((dim_a + dim_b, len(raw_orders)), dtype=np.int64)
        raw_generators[:dim_a, :self.rank] = self.generators
        raw_generators[dim_a:, self.rank:] = other.generators

        def raw_reduce(X):
            return np.vstack([self.reduce_many(X[:dim_a]), other.reduce_many(X[dim_a:])])

        return _normalize_cyclic(raw_orders, raw_generators, raw_reduce, m, dim_a + dim_b)

    def describe(self) -> str:
        return format_invariant_factors(self.invariant_factors)

    def __str__(self) -> str:
        return self.describe()


def trivial_presentation(ambient_dim: int, m: int) -> FiniteAbelianGroupPresentation:
    return FiniteAbelianGroupPresentation(
        modulus=m,
        ambient_dim=ambient_dim,
        invariant_factors=(),
        generators=np.zeros((ambient_dim, 0), dtype=np.int64),
        reducer=lambda X: np.zeros((0, X.shape[1]), dtype=np.int64),
    )


@dataclass(frozen=True)
class _Cokernel:
    """(ℤ/m)^k / span(relations) as ⊕ℤ/d_i: coordinates are (W·c) mod d_i, generators columns of E"""
    factors: Tuple[int, ...]
    to_coordinates: np.ndarray
    generator_coordinates: np.ndarray


def _integer_chain(orders: Sequence[int], m: int) -> Tuple[Tuple[int, ...], np.ndarray, np.ndarray]:
    """Rewrite ⊕ℤ/o_i in invariant-factor form: (factors, W, E) with coordinates W·c and generators E"""
    count = len(orders)
    if count == 0:
        return (), np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64)
    decomposition = smith_decomposition(np.diag([int(o) for o in orders]).astype(object))
    values = [int(decomposition.diagonal[i, i]) for i in range(count)]
    keep = [i for i, d in enumerate(values) if d > 1]
    factors = tuple(values[i] for i in keep)
    W = np.array([[int(decomposition.left[i, j]) % m for j in range(count)] for i in keep],
                 dtype=np.int64).reshape(len(keep), count)
    E = np.array([[int(decomposition.left_inverse[j, i]) % m for i in keep] for j in range(count)],
                 dtype=np.int64).reshape(count, len(keep))
    return factors, W, E


def _cokernel(relations: np.ndarray, m: int) -> _Cokernel:
    k = relations.shape[0]
    if k == 0:
        return _Cokernel((), np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64))
    if relations.shape[1] == 0:
        relations = np.zeros((k, 1), dtype=np.int64)
    diag = diagonalize_mod(relations, m, track_left=True, track_right=False)
    orders = [int(diag.diagonal[i]) if i < diag.rank else m for i in range(k)]
    nontrivial = [i for i, o in enumerate(orders) if o > 1]
    factors, W, E = _integer_chain([orders[i] for i in nontrivial], m)
    if not factors:
        return _Cokernel((), np.zeros((0, k), dtype=np.int64), np.zeros((k, 0), dtype=np.int64))
    to_coordinates = (W @ diag.left[nontrivial, :]) % m
    generator_coordinates = (diag.left_inverse[:, nontrivial] @ E) % m
    return _Cokernel(factors, to_coordinates, generator_coordinates)


def _normalize_cyclic(orders: Sequence[int], generators: np.ndarray, raw_reduce: Reducer,
                      m: int, ambient_dim: int) -> FiniteAbelianGroupPresentation:
    factors, W, E = _integer_chain(orders, m)
    if not factors:
        return trivial_presentation(ambient_dim, m)
    new_generators = (generators @ E) % m

    def reducer(X):
        return (W @ raw_reduce(X)) % m

    return FiniteAbelianGroupPresentation(m, ambient_dim, factors, new_generators, reducer)


def normalize_cyclic(orders: Sequence[int], m: int) -> FiniteAbelianGroupPresentation:
    """⊕ℤ/o_i written in invariant-factor form, ambient (ℤ/m)^k with the standard embedding"""
    k = len(orders)
    scales = np.array([m // int(o) for o in orders], dtype=np.int64)
    generators = np.diag(scales).astype(np.int64) if k else np.zeros((0, 0), dtype=np.int64)

    def raw_reduce(X):
        return X // scales[:, None]

    return _normalize_cyclic(orders, generators, raw_reduce, m, k)


def _check_composition(d_in: np.ndarray, d_out: np.ndarray, m: int) -> None:
    if d_in.shape[1] == 0 or d_out.shape[0] == 0:
        return
    composite = (d_out @ d_in) % m
    nonzero = np.argwhere(composite)
    if nonzero.size:
        row, col = (int(v) for v in nonzero[0])
        raise CompositionNotZero(
            f"d_out∘d_in is nonzero mod {m} at ({row}, {col})",
            {"row": row, "column": col, "value": int(composite[row, col])},
        )


def homology_at(d_in, d_out, m: int) -> FiniteAbelianGroupPresentation:
    """ker(d_out)/im(d_in) over ℤ/m.

    ``d_in`` maps into the middle module (n × a) and ``d_out`` leaves it
    (b × n). Generators are genuine kernel elements.
    """
    d_in = as_mod_matrix(d_in, m)
    n = d_in.shape[0]
    d_out = as_mod_matrix(d_out, m) if np.size(d_out) else np.zeros((0, n), dtype=np.int64)
    if d_out.shape[1] != n:
        raise ValueError(f"d_out has {d_out.shape[1]} columns, expected {n}")
    _check_composition(d_in, d_out, m)
    if n == 0:
        return trivial_presentation(0, m)

    if d_out.shape[0]:
        diag = diagonalize_mod(d_out, m)
        right, right_inverse = diag.right, diag.right_inverse
        orders = diag.column_orders()
    else:
        right = right_inverse = np.eye(n, dtype=np.int64)
        orders = np.full(n, m, dtype=np.int64)

    keep = np.nonzero(orders > 1)[0]
    if keep.size == 0:
        return trivial_presentation(n, m)
    orders = orders[keep]
    scales = m // orders
    cycle_generators = (right[:, keep] * scales) % m
    coordinate_rows = right_inverse[keep, :]

    def cycle_coordinates(X):
        return ((coordinate_rows @ X) % m) // scales[:, None]

    boundary = cycle_coordinates(d_in) if d_in.shape[1] else np.zeros((keep.size, 0), dtype=np.int64)
    relations = np.hstack([boundary, np.diag(orders).astype(np.int64)])
    quotient = _cokernel(relations, m)
    if not quotient.factors:
        return trivial_presentation(n, m)

    generators = (cycle_generators @ quotient.generator_coordinates) % m
    to_coordinates = quotient.to_coordinates

    def reducer(X):
        return (to_coordinates @ cycle_coordinates(X)) % m

    logger.debug(f"homology_at: dim {n}, cycles {keep.size}, result {format_invariant_factors(quotient.factors)}")
    return FiniteAbelianGroupPresentation(m, n, quotient.factors, generators, reducer)


def span_quotient(P, Q, m: int) -> FiniteAbelianGroupPresentation:
    """span(P) / (span(P) ∩ span(Q)) inside (ℤ/m)^n, generated by images of the columns of P.

    The reducer accepts elements of span(P) + span(Q).
    """
    P = as_mod_matrix(P, m)
    n = P.shape[0]
    Q = as_mod_matrix(Q, m, rows=n) if np.size(Q) else np.zeros((n, 0), dtype=np.int64)
    g = P.shape[1]
    if g == 0 or n == 0:
        return trivial_presentation(n, m)

    stacked = np.hstack([P, (-Q) % m])
    relations = kernel_mod(stacked, m)[:g, :]
    quotient = _cokernel(relations, m)
    if not quotient.factors:
        return trivial_presentation(n, m)

    generators = (P @ quotient.generator_coordinates) % m
    solver = ModularSolver(np.hstack([P, Q]), m)
    to_coordinates = quotient.to_coordinates

    def reducer(X):
        solutions, solvable = solver.solve_many(X)
        if not np.all(solvable):
            raise ValueError("element outside span(P) + span(Q)")
        return (to_coordinates @ solutions[:g, :]) % m

    return FiniteAbelianGroupPresentation(m, n, quotient.factors, generators, reducer)


def presented_map_matrix(source: FiniteAbelianGroupPresentation, target: FiniteAbelianGroupPresentation,
                         images) -> np.ndarray:
    """Matrix (target.rank × source.rank) of a map given by ambient images of source generators"""
    images = as_mod_matrix(images, target.modulus, rows=target.ambient_dim) if source.rank else \
        np.zeros((target.ambient_dim, 0), dtype=np.int64)
    return target.reduce_many(images)


def map_respects_relations(source: FiniteAbelianGroupPresentation, target: FiniteAbelianGroupPresentation,
                           matrix: np.ndarray) -> bool:
    """d_i times column i vanishes in the target, so the map is well defined"""
    if source.rank == 0 or target.rank == 0:
        return True
    factors = np.array(target.invariant_factors, dtype=np.int64)[:, None]
    scaled = matrix * np.array(source.invariant_factors, dtype=np.int64)[None, :]
    return bool(np.all(scaled % factors == 0))


def presented_kernel(source: FiniteAbelianGroupPresentation, target: FiniteAbelianGroupPresentation,
                     matrix: np.ndarray) -> np.ndarray:
    """Generators (coordinate columns in ``source``) of the kernel of a presented map"""
    m = source.modulus
    if source.rank == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if target.rank == 0:
        return np.eye(source.rank, dtype=np.int64)
    scales = np.array([m // d for d in target.invariant_factors], dtype=np.int64)[:, None]
    generators = kernel_mod((matrix * scales) % m, m)
    return generators % np.array(source.invariant_factors, dtype=np.int64)[:, None]


def presented_image(target: FiniteAbelianGroupPresentation, matrix: np.ndarray) -> np.ndarray:
    if target.rank == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return matrix % np.array(target.invariant_factors, dtype=np.int64)[:, None]


def subgroups_equal(presentation: FiniteAbelianGroupPresentation, A, B) -> bool:
    """Compare two subgroups of a presentation given by coordinate generators"""
    if presentation.rank == 0:
        return True
    m = presentation.modulus
    A = np.asarray(A, dtype=np.int64).reshape(presentation.rank, -1)
    B = np.asarray(B, dtype=np.int64).reshape(presentation.rank, -1)
    return spans_equal(presentation.embed(A), presentation.embed(B), m)


def subgroup_order(presentation: FiniteAbelianGroupPresentation, A) -> int:
    if presentation.rank == 0:
        return 1
    A = np.asarray(A, dtype=np.int64).reshape(presentation.rank, -1)
    return submodule_order(presentation.embed(A), presentation.modulus)


def is_isomorphic(a: FiniteAbelianGroupPresentation, b: FiniteAbelianGroupPresentation) -> bool:
    return a.invariant_factors == b.invariant_factors


def subgroup_list(presentation: FiniteAbelianGroupPresentation, A) -> List[Tuple[int, ...]]:
    """Enumerate a (small) subgroup by closure, for test oracles and reports"""
    factors = np.array(presentation.invariant_factors, dtype=np.int64)
    A = np.asarray(A, dtype=np.int64).reshape(presentation.rank, -1)
    seen = {tuple([0] * presentation.rank)}
    frontier = list(seen)
    while frontier:
        current = frontier.pop()
        for j in range(A.shape[1]):
            nxt = tuple(int(v) for v in (np.array(current) + A[:, j]) % factors) if presentation.rank else ()
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return sorted(seen)


def subgroup_invariant_factors(presentation: FiniteAbelianGroupPresentation, A) -> Tuple[int, ...]:
    """Invariant factors of the subgroup generated by coordinate columns A"""
    if presentation.rank == 0:
        return ()
    A = np.asarray(A, dtype=np.int64).reshape(presentation.rank, -1)
    return invariant_factors_from_orders(submodule_orders(presentation.embed(A), presentation.modulus))


def presented_invariants(presentation: FiniteAbelianGroupPresentation, matrices: Sequence[np.ndarray]) -> np.ndarray:
    """Coordinate generators of {c : M·c = c for every M}, each M an endomorphism in coordinates"""
    if presentation.rank == 0:
        return np.zeros((0, 0), dtype=np.int64)
    m = presentation.modulus
    k = presentation.rank
    scales = np.array([m // d for d in presentation.invariant_factors], dtype=np.int64)[:, None]
    identity = np.eye(k, dtype=np.int64)
    blocks = [((np.asarray(M, dtype=np.int64) - identity) * scales) % m for M in matrices]
    if not blocks:
        return identity
    generators = kernel_mod(np.vstack(blocks), m)
    if generators.size == 0:
        return np.zeros((k, 0), dtype=np.int64)
    return generators % np.array(presentation.invariant_factors, dtype=np.int64)[:, None]


def presented_quotient(presentation: FiniteAbelianGroupPresentation, A) -> FiniteAbelianGroupPresentation:
    """presentation / ⟨A⟩ for coordinate generators A, on the embedded coordinate space"""
    m = presentation.modulus
    if presentation.rank == 0:
        return trivial_presentation(0, m)
    whole = presentation.embed(np.eye(presentation.rank, dtype=np.int64))
    sub = presentation.embed(np.asarray(A, dtype=np.int64).reshape(presentation.rank, -1))
    return span_quotient(whole, sub, m)
