import itertools

import numpy as np
import pytest

from core.errors import (
    AxiomViolation,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotExactFactorization,
    NotSubgroup,
    ValidationError,
)
from fingroup import (
    act_left_tuple,
    act_right_tuple,
    bismash,
    cyclic,
    d4_factorization,
    dihedral,
    direct_product,
    from_exact_factorization,
    induced_subgroup,
    s4_factorization,
    semidirect_pair,
    subgroup_elements,
    symmetric,
    validate_group,
)

FAST_PAIRS = ["c2_c2_trivial", "c2_c3_trivial", "c2_on_c3", "c2_on_c4", "d4_zappa_szep"]


def test_library_groups():
    assert cyclic(5).order == 5 and cyclic(5).is_abelian()
    assert dihedral(4).order == 8 and not dihedral(4).is_abelian()
    assert dihedral(3).element_orders() == {1: 1, 2: 3, 3: 2}
    assert symmetric(3).element_orders() == dihedral(3).element_orders()
    assert direct_product(cyclic(2), cyclic(3)).element_orders() == cyclic(6).element_orders()


def test_symmetric_four():
    assert symmetric(4).element_orders() == {1: 1, 2: 9, 3: 8, 4: 6}


def test_corrupted_table_reports_a_non_associative_triple():
    with pytest.raises(NotAssociative) as excinfo:
        validate_group([[0, 1, 2], [1, 2, 0], [2, 0, 0]])
    assert excinfo.value.witness == [1, 1, 2]
    assert excinfo.value.to_dict()["code"] == "not_associative"


def test_identity_must_be_element_zero():
    with pytest.raises(NoIdentity) as excinfo:
        validate_group([[1, 0], [0, 1]])
    assert excinfo.value.witness == {"identity": 1}


def test_missing_inverse():
    with pytest.raises(NoInverse) as excinfo:
        validate_group([[0, 1], [1, 1]])
    assert excinfo.value.witness == {"element": 1}


def test_out_of_range_entry():
    with pytest.raises(ValidationError):
        validate_group([[0, 2], [1, 0]])


def test_generated_subgroups():
    D4 = dihedral(4)
    rotations = subgroup_elements(D4, [1])
    assert rotations == [0, 1, 2, 3]
    assert induced_subgroup(D4, rotations).is_abelian()


def test_action_that_is_not_a_homomorphism():
    with pytest.raises(AxiomViolation) as excinfo:
        semidirect_pair(cyclic(3), cyclic(3), lambda t, n: (-n) % 3 if t else n)
    assert excinfo.value.axiom == "left_action"
    assert excinfo.value.witness == {"t": 1, "s": 1, "n": 1}


def test_exact_factorization_of_the_triangle_group():
    mp = from_exact_factorization(dihedral(3), [0, 1, 2], [0, 3], name="S3")
    assert mp.right_is_trivial and not mp.left_is_trivial
    assert bismash(mp).group.element_orders() == symmetric(3).element_orders()


def test_d4_factorization_has_a_nontrivial_right_action():
    mp = d4_factorization()
    assert mp.left_is_trivial
    assert not mp.right_is_trivial
    assert bismash(mp).group.element_orders() == dihedral(4).element_orders()


@pytest.mark.slow
def test_s4_factorization_is_a_genuine_zappa_szep_product():
    mp = s4_factorization()
    assert not mp.left_is_trivial and not mp.right_is_trivial
    assert bismash(mp).group.element_orders() == symmetric(4).element_orders()


def test_factorization_errors():
    with pytest.raises(NotSubgroup):
        from_exact_factorization(dihedral(3), [0, 1], [0, 3])
    with pytest.raises(NotExactFactorization):
        from_exact_factorization(dihedral(4), [0, 4], [0, 2])


@pytest.mark.parametrize("key", FAST_PAIRS)
def test_bismash_contains_both_factors(library, key):
    mp = library[key]()
    B = bismash(mp)
    assert B.group.order == mp.bismash_order
    assert mp.N.is_homomorphism(B.group, B.inject_N())
    assert mp.T.is_homomorphism(B.group, B.inject_T())
    for x in range(B.group.order):
        assert B.group.multiply(x, B.antipode(x)) == 0


@pytest.mark.parametrize("key", FAST_PAIRS)
def test_tuple_actions_follow_the_bismash_product(library, key):
    mp = library[key]()
    B = bismash(mp)
    T, N = mp.T, mp.N
    for t, n1, n2 in itertools.product(range(T.order), range(N.order), range(N.order)):
        x = B.group.product([B.element(0, t), B.element(n1, 0), B.element(n2, 0)])
        n_part, _ = B.components(x)
        assert n_part == N.product(act_left_tuple(mp, t, (n1, n2)))
    for t1, t2, n in itertools.product(range(T.order), range(T.order), range(N.order)):
        x = B.group.product([B.element(0, t1), B.element(0, t2), B.element(n, 0)])
        _, t_part = B.components(x)
        assert t_part == T.product(act_right_tuple(mp, (t1, t2), n))


def test_vectorized_tuple_actions_match(library):
    from fingroup import act_left_tuples, act_right_tuples

    mp = library["d4_zappa_szep"]()
    rows = np.array(list(itertools.product(range(mp.N.order), repeat=2)), dtype=np.int64)
    for t in range(mp.T.order):
        vectorized = act_left_tuples(mp, np.full(len(rows), t), rows)
        assert [tuple(r) for r in vectorized] == [act_left_tuple(mp, t, r) for r in rows]
    ts = np.array(list(itertools.product(range(mp.T.order), repeat=2)), dtype=np.int64)
    for n in range(mp.N.order):
        vectorized = act_right_tuples(mp, ts, np.full(len(ts), n))
        assert [tuple(r) for r in vectorized] == [act_right_tuple(mp, r, n) for r in ts]
