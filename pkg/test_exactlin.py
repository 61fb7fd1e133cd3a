import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as sympy_invariant_factors

from core.errors import CompositionNotZero
from exactlin import (
    RationalMatrix,
    homology_at,
    invariant_factors_from_orders,
    kernel_mod,
    normalize_cyclic,
    presented_invariants,
    presented_quotient,
    smith_decomposition,
    smith_normal_form,
    solve_mod,
    span_contains,
    span_quotient,
    submodule_order,
)

small_ints = st.integers(min_value=-12, max_value=12)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4):
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    return [[draw(small_ints) for _ in range(cols)] for _ in range(rows)]


@st.composite
def mod_systems(draw):
    m = draw(st.sampled_from([2, 3, 4, 6, 8, 12]))
    rows = draw(st.integers(min_value=1, max_value=3))
    cols = draw(st.integers(min_value=1, max_value=3))
    A = np.array([[draw(st.integers(0, m - 1)) for _ in range(cols)] for _ in range(rows)], dtype=np.int64)
    return m, A


def _as_object(rows):
    return np.array(rows, dtype=object)


# --- Smith normal form --------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_smith_decomposition_factors_the_matrix(rows):
    decomposition = smith_decomposition(rows)
    M = _as_object(rows)
    assert (decomposition.left.dot(M).dot(decomposition.right) == decomposition.diagonal).all()
    n, k = M.shape
    assert (decomposition.left_inverse.dot(decomposition.left) == np.identity(n, dtype=object)).all()
    assert (decomposition.right.dot(decomposition.right_inverse) == np.identity(k, dtype=object)).all()


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_invariant_factors_form_a_divisibility_chain(rows):
    factors = smith_decomposition(rows).invariant_factors
    assert all(d > 0 for d in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_invariant_factors_agree_with_sympy(rows):
    matrix = DomainMatrix([[ZZ(v) for v in row] for row in rows], (len(rows), len(rows[0])), ZZ)
    expected = tuple(int(abs(d)) for d in sympy_invariant_factors(matrix) if d != 0)
    assert smith_decomposition(rows).invariant_factors == expected


def test_textbook_smith_form():
    assert smith_decomposition([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).invariant_factors == (2, 6, 12)


def test_zero_matrix_has_no_invariant_factors():
    assert smith_decomposition([[0, 0], [0, 0]]).invariant_factors == ()


@pytest.mark.parametrize("orders, expected", [
    ([2, 3], (6,)),
    ([2, 2, 4], (2, 2, 4)),
    ([4, 6], (2, 12)),
    ([1, 1], ()),
])
def test_invariant_factors_from_cyclic_orders(orders, expected):
    assert invariant_factors_from_orders(orders) == expected


# --- linear algebra over ℤ/m ----------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(mod_systems(), st.data())
def test_solve_mod_finds_solutions_of_consistent_systems(system, data):
    m, A = system
    x = np.array([data.draw(st.integers(0, m - 1)) for _ in range(A.shape[1])], dtype=np.int64)
    b = (A @ x) % m
    solution = solve_mod(A, b, m)
    assert solution is not None
    assert np.array_equal((A @ solution) % m, b)


def test_solve_mod_reports_inconsistent_systems():
    assert solve_mod([[2]], [3], 4) is None
    solution = solve_mod([[2]], [2], 4)
    assert (2 * int(solution[0])) % 4 == 2


@settings(max_examples=50, deadline=None)
@given(mod_systems())
def test_kernel_mod_is_the_whole_solution_set(system):
    m, A = system
    K = kernel_mod(A, m)
    assert not np.any((A @ K) % m)
    brute = sum(
        1 for x in itertools.product(range(m), repeat=A.shape[1])
        if not np.any((A @ np.array(x, dtype=np.int64)) % m)
    )
    assert (submodule_order(K, m) if K.size else 1) == brute


def test_span_contains_respects_torsion():
    assert span_contains([[2], [0]], [[4], [0]], 8)
    assert not span_contains([[2], [0]], [[1], [0]], 8)


# --- presentations ----------------------------------------------------------------

def test_homology_of_multiplication_by_two_mod_four():
    two = np.array([[2]], dtype=np.int64)
    assert homology_at(two, two, 4).invariant_factors == ()
    assert homology_at(np.zeros((1, 0), dtype=np.int64), two, 4).invariant_factors == (2,)
    assert homology_at(np.zeros((1, 0), dtype=np.int64), np.zeros((0, 1), dtype=np.int64), 4).invariant_factors == (4,)


def test_homology_rejects_a_non_complex():
    with pytest.raises(CompositionNotZero) as excinfo:
        homology_at([[1]], [[1]], 4)
    assert excinfo.value.witness == {"row": 0, "column": 0, "value": 1}


@settings(max_examples=40, deadline=None)
@given(mod_systems())
def test_homology_generators_reduce_to_unit_coordinates(system):
    m, d_out = system
    d_in = kernel_mod(d_out, m)
    d_in = d_in[:, :1] if d_in.size else np.zeros((d_out.shape[1], 0), dtype=np.int64)
    H = homology_at(d_in, d_out, m)
    if H.rank:
        assert np.array_equal(H.reduce_many(H.generators), np.eye(H.rank, dtype=np.int64))
        for coordinates in itertools.product(*(range(d) for d in H.invariant_factors)):
            assert H.coordinates_equal(H.reduce(H.element(coordinates)), coordinates)


def test_span_quotient_of_a_standard_lattice():
    quotient = span_quotient(np.eye(2, dtype=np.int64), [[2], [0]], 4)
    assert quotient.invariant_factors == (2, 4)
    assert quotient.order == 8


def test_cyclic_orders_combine_into_invariant_factors():
    assert normalize_cyclic([2, 3], 6).invariant_factors == (6,)
    two, three = normalize_cyclic([2], 6), normalize_cyclic([3], 6)
    assert two.direct_sum(three).invariant_factors == (6,)


def test_invariants_and_quotient_of_a_swap():
    G = normalize_cyclic([6, 6], 6)
    swap = np.array([[0, 1], [1, 0]], dtype=np.int64)
    fixed = presented_invariants(G, [swap])
    assert span_quotient(G.embed(np.eye(2, dtype=np.int64)), G.embed(fixed), 6).invariant_factors == (6,)
    assert presented_quotient(G, fixed).invariant_factors == (6,)


# --- exact rationals -------------------------------------------------------------------

def test_rational_inverse_and_nullspace():
    A = RationalMatrix.from_rows([[1, 2], [3, 4]])
    assert A @ A.inverse() == RationalMatrix.identity(2)
    assert A.det() == Fraction(-2)
    singular = RationalMatrix.from_rows([[1, 2], [2, 4]])
    assert singular.rank() == 1
    kernel = singular.nullspace()
    assert (singular @ kernel).is_zero()
    assert kernel.cols == 1


def test_rational_solve_detects_inconsistency():
    singular = RationalMatrix.from_rows([[1, 2], [2, 4]])
    assert singular.solve([1, 3]) is None
    assert singular.solve([Fraction(1, 2), 1]) == [Fraction(1, 2), Fraction(0)]


def test_smith_normal_form_transforms():
    M = np.array([[2, 4], [6, 8]], dtype=object)
    U, D, V = (np.array(part, dtype=object) for part in smith_normal_form(M))
    assert np.array_equal(U @ M @ V, D)
    assert [abs(D[0, 0]), abs(D[1, 1])] == [2, 4]
    assert D[0, 1] == 0 and D[1, 0] == 0
