import numpy as np
import pytest

from core.errors import ActionsIncompatible, JacobiViolated, NotAutomorphism, ValidationError
from exactlin import RationalMatrix
from fingroup import cyclic
from liecohomology import (
    Method6Configuration,
    abelian,
    abelian_cohomology_dims,
    action_from_generators,
    check_actions_compatible,
    chevalley_eilenberg,
    exterior_action_matrix,
    from_brackets,
    induced_action_on_H,
    invariants,
    lie_cohomology,
    lie_cohomology_dims,
    method6,
    method6_examples,
    permutation_matrix,
    sl_structure_constants,
)


def heisenberg():
    return from_brackets(3, {(0, 1): {2: 1}}, name="heis")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_abelian_cohomology_is_the_exterior_algebra(n):
    assert lie_cohomology_dims(abelian(n)) == abelian_cohomology_dims(n)


def test_heisenberg_cohomology():
    assert lie_cohomology_dims(heisenberg()) == [1, 2, 2, 1]


def test_sl2_has_no_first_or_second_cohomology():
    assert lie_cohomology_dims(sl_structure_constants(2)) == [1, 0, 0, 1]


def test_sl2_from_brackets_matches_matrix_construction():
    sl2 = from_brackets(3, {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}})
    assert lie_cohomology_dims(sl2) == [1, 0, 0, 1]


def test_sl3_low_degrees():
    assert lie_cohomology_dims(sl_structure_constants(3), n_max=3)[:3] == [1, 0, 0]


def test_jacobi_identity_is_checked():
    with pytest.raises(JacobiViolated) as excinfo:
        from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
    assert excinfo.value.witness == {"triple": [0, 1, 2]}


def test_self_bracket_is_rejected():
    with pytest.raises(ValidationError):
        from_brackets(2, {(0, 0): {1: 1}})


def test_differential_squares_to_zero():
    complex_ = chevalley_eilenberg(sl_structure_constants(2))
    for p in range(1, complex_.max_degree):
        assert (complex_.differentials[p] @ complex_.differentials[p - 1]).is_zero()


def test_action_must_preserve_the_bracket():
    swap_ends = RationalMatrix.from_rows(permutation_matrix([2, 1, 0]))
    with pytest.raises(NotAutomorphism):
        action_from_generators(heisenberg(), cyclic(2), {1: swap_ends})


def test_generator_matrices_must_satisfy_the_relations():
    swap = RationalMatrix.from_rows(permutation_matrix([1, 0, 2]))
    with pytest.raises(NotAutomorphism):
        action_from_generators(abelian(3), cyclic(3), {1: swap})


def test_exterior_square_of_a_transposition():
    swap = RationalMatrix.from_rows(permutation_matrix([1, 0]))
    assert exterior_action_matrix(swap, 2, 2) == RationalMatrix.from_rows([[-1]])


def test_induced_action_on_second_cohomology():
    space = abelian(3)
    rotation = action_from_generators(space, cyclic(3), {1: RationalMatrix.from_rows(permutation_matrix([1, 2, 0]))})
    complex_ = chevalley_eilenberg(space)
    h2 = lie_cohomology(complex_, 2)
    matrices = induced_action_on_H(complex_, rotation, 2, h2)
    assert len(matrices) == 3
    assert matrices[0] == RationalMatrix.identity(3)


def test_triangle_configuration():
    report = method6(method6_examples()["triangle"], 6)
    assert report.h2_lie_dim == 3
    assert report.invariant_dims == [1, 1, 0]
    assert report.lie_quotient_dim == 1
    assert report.h2_GN.invariant_factors == [3]
    assert report.h2_GN_T_invariant.invariant_factors == []
    assert report.group_quotient.invariant_factors == [3]
    assert report.orders_coprime and report.phi_is_isomorphism
    assert any(line.startswith("|G(T)| = 2") and "ℋ²(T,N) ≅ k^1" in line for line in report.conclusion)


def test_swap_plane_configuration():
    report = method6(method6_examples()["swap_plane"], 2)
    assert report.h2_lie_dim == 1
    assert report.invariant_dims == [1, 0, 0]
    assert report.lie_quotient_dim == 1
    assert report.group_quotient.invariant_factors == []


def test_sl3_configuration_has_no_lie_part():
    report = method6(method6_examples()["sl3"], 6)
    assert report.h2_lie_dim == 0
    assert report.lie_quotient_dim == 0
    assert any("vanishes" in line for line in report.conclusion)


def _triangle_with(lie_action_T=None, group_action=None) -> Method6Configuration:
    base = method6_examples()["triangle"]
    return Method6Configuration(
        name="broken",
        algebra=base.algebra,
        G_T=base.G_T,
        G_N=base.G_N,
        group_action=base.group_action if group_action is None else group_action,
        lie_action_T=lie_action_T or base.lie_action_T,
        lie_action_N=base.lie_action_N,
    )


def test_lie_actions_must_combine():
    trivial_T = action_from_generators(abelian(3), cyclic(2), {1: RationalMatrix.identity(3)})
    with pytest.raises(ActionsIncompatible) as excinfo:
        check_actions_compatible(_triangle_with(lie_action_T=trivial_T))
    assert excinfo.value.to_dict()["code"] == "actions_incompatible"


def test_group_action_must_be_by_automorphisms():
    with pytest.raises(ActionsIncompatible):
        method6(_triangle_with(group_action=np.array([[0, 1, 2], [0, 1, 1]], dtype=np.int64)), 6)


def test_fixed_space_of_a_rotation():
    rotation = RationalMatrix.from_rows(permutation_matrix([1, 2, 0]))
    fixed = invariants([rotation], 3)
    assert fixed.cols == 1
    assert rotation @ fixed == fixed
