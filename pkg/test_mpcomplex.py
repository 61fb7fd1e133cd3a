import itertools
from math import gcd

import numpy as np
import pytest

from core.errors import InsufficientBounds, NonTrivialRightAction
from fingroup import cyclic, trivial_matched_pair
from mpcomplex import (
    bidegree_cohomology,
    build_double_complex,
    is_tot_cocycle,
    iterated_cohomology,
    matched_pair_cohomology,
    mp_cohomology_classes,
    pi_sequence_report,
    restricted_subgroup,
)

FAST_PAIRS = ["c2_c2_trivial", "c2_c3_trivial", "c2_on_c3", "c2_on_c4", "d4_zappa_szep"]


def brute_force_first_cohomology(mp, m: int) -> int:
    """Number of f: T × N → ℤ/m (normalized) killed by both differentials out of C^{1,1}"""
    T, N = mp.T, mp.N
    keys = list(itertools.product(range(1, T.order), range(1, N.order)))

    def f_at(f, t, n):
        return 0 if t == 0 or n == 0 else f[(t, n)]

    count = 0
    for values in itertools.product(range(m), repeat=len(keys)):
        f = dict(zip(keys, values))
        vertical = all(
            (f_at(f, mp.right(t, n1), n2) - f_at(f, t, N.multiply(n1, n2)) + f_at(f, t, n1)) % m == 0
            for t, n1, n2 in itertools.product(range(1, T.order), range(1, N.order), range(1, N.order))
        )
        horizontal = all(
            (f_at(f, t1, mp.left(t2, n)) - f_at(f, T.multiply(t1, t2), n) + f_at(f, t2, n)) % m == 0
            for t1, t2, n in itertools.product(range(1, T.order), range(1, T.order), range(1, N.order))
        )
        count += vertical and horizontal
    return count


@pytest.mark.parametrize("key", FAST_PAIRS)
def test_differentials_square_to_zero_and_commute(library, key):
    build_double_complex(library[key](), 6, 3, 3).check_relations()


def test_cell_dimensions(s3_pair):
    complex_ = build_double_complex(s3_pair, 6, 3, 3, check=False)
    assert complex_.dim(2, 1) == 1 * 2
    assert complex_.dim(1, 3) == 8
    assert complex_.tot_cells(4) == [(1, 3), (2, 2), (3, 1)]
    assert complex_.tot_dim(3) == complex_.dim(1, 2) + complex_.dim(2, 1)


def test_split_and_join_are_inverse(s3_pair):
    complex_ = build_double_complex(s3_pair, 6, 3, 3, check=False)
    vector = np.arange(complex_.tot_dim(3), dtype=np.int64) % 6
    assert np.array_equal(complex_.join(3, complex_.split(3, vector)), vector)


@pytest.mark.parametrize("a, b, m", [(2, 2, 2), (2, 2, 4), (2, 4, 4), (3, 3, 3), (2, 3, 6)])
def test_first_cohomology_of_a_trivial_pair_is_the_bicharacter_group(a, b, m):
    mp = trivial_matched_pair(cyclic(a), cyclic(b))
    d = gcd(gcd(a, b), m)
    assert matched_pair_cohomology(mp, m, 1).invariant_factors == ((d,) if d > 1 else ())


@pytest.mark.parametrize("key, m", [("c2_c2_trivial", 2), ("c2_on_c3", 3), ("c2_on_c3", 6), ("c2_on_c4", 4),
                                    ("d4_zappa_szep", 2)])
def test_first_cohomology_agrees_with_enumeration(library, key, m):
    mp = library[key]()
    assert matched_pair_cohomology(mp, m, 1).order == brute_force_first_cohomology(mp, m)


def test_bounds_must_cover_the_degree(s3_pair):
    with pytest.raises(InsufficientBounds) as excinfo:
        matched_pair_cohomology(s3_pair, 6, 2, p_max=2)
    assert excinfo.value.witness == {"degree": 2, "bounds": [2, 3]}
    with pytest.raises(InsufficientBounds):
        matched_pair_cohomology(s3_pair, 6, 0)


def test_classes_are_total_cocycles(trivial_c2):
    complex_ = build_double_complex(trivial_c2, 2, 3, 3, check=False)
    presentation = matched_pair_cohomology(trivial_c2, 2, 2, complex_=complex_)
    classes = mp_cohomology_classes(complex_, 2, presentation)
    assert len(classes) == presentation.rank
    for cls in classes:
        assert sorted(cls.components) == [1, 2]
        assert is_tot_cocycle(complex_, 2, complex_.join(3, cls.components))


def test_single_cell_subgroup_in_degree_one(s3_pair):
    restricted = restricted_subgroup(s3_pair, 6, 1, 1)
    assert restricted.is_injective()
    assert restricted.presentation.invariant_factors == restricted.ambient.invariant_factors


def test_restricted_subgroup_rejects_bad_columns(s3_pair):
    with pytest.raises(InsufficientBounds):
        restricted_subgroup(s3_pair, 6, 2, 3)


@pytest.mark.parametrize("key, m", [("c2_c2_trivial", 2), ("c2_on_c3", 6)])
def test_top_cell_subgroup_matches_the_first_row(library, key, m):
    mp = library[key]()
    restricted = restricted_subgroup(mp, m, 2, 2)
    assert restricted.presentation.invariant_factors == bidegree_cohomology(mp, m, 2, 1).invariant_factors


@pytest.mark.parametrize("key, m", [("c2_c2_trivial", 2), ("c2_on_c3", 3), ("c2_on_c3", 6), ("c2_on_c4", 4)])
@pytest.mark.parametrize("i, j", [(1, 1), (1, 2), (2, 1)])
def test_bidegree_cohomology_matches_iterated_cohomology(library, key, m, i, j):
    mp = library[key]()
    assert bidegree_cohomology(mp, m, i, j).invariant_factors == iterated_cohomology(mp, m, i, j).invariant_factors


def test_bidegree_values_with_a_sign_action(library):
    mp = library["c2_on_c4"]()
    assert bidegree_cohomology(mp, 4, 1, 1).invariant_factors == (2,)
    assert bidegree_cohomology(library["c2_c2_trivial"](), 2, 1, 2).invariant_factors == (2,)


def test_bidegree_needs_a_trivial_right_action(library):
    mp = library["d4_zappa_szep"]()
    with pytest.raises(NonTrivialRightAction) as excinfo:
        bidegree_cohomology(mp, 2, 1, 1)
    assert excinfo.value.to_dict()["code"] == "nontrivial_right_action"
    with pytest.raises(NonTrivialRightAction):
        iterated_cohomology(mp, 2, 1, 1)


@pytest.mark.parametrize("key, m", [("c2_c2_trivial", 2), ("c2_on_c3", 6)])
def test_pi_sequence_is_exact(library, key, m):
    report = pi_sequence_report(library[key](), m)
    assert report.composite_is_zero
    assert report.is_exact
    assert set(report.to_dict()) == {"H2(N)", "H2_2", "H2", "H^{1,2}", "composite_is_zero", "is_exact"}
