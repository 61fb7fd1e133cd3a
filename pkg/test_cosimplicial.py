import numpy as np
import pytest

from core.errors import CosimplicialIdentityFailed, InsufficientBounds, ValidationError
from cosimplicial import (
    alexander_whitney,
    constant_object,
    dold_kan_comparison,
    from_matched_pair,
    normalize,
    shuffle,
    shuffle_block,
    shuffles,
    verify_ez,
)
from mpcomplex import build_double_complex, matched_pair_cohomology


def test_constant_object():
    X = constant_object(4, 2, 3)
    X.check_identities()
    complex_ = X.cochain_complex()
    assert complex_.cohomology(0).invariant_factors == (4, 4)
    assert complex_.cohomology(1).invariant_factors == ()
    normalized = normalize(X)
    assert normalized.normalized_rank(0) == 2
    assert [normalized.normalized_rank(n) for n in (1, 2, 3)] == [0, 0, 0]
    assert all(dold_kan_comparison(X).values())


def test_broken_identity_is_reported():
    X = constant_object(2, 1, 2)
    X.cofaces[0][0] = np.zeros((1, 1), dtype=np.int64)
    with pytest.raises(CosimplicialIdentityFailed) as excinfo:
        X.check_identities()
    assert "identity" in excinfo.value.witness


def test_shuffles_and_signs():
    assert shuffles(1, 1) == [((0,), (1,), 1), ((1,), (0,), -1)]
    assert len(shuffles(2, 1)) == 3
    assert len(shuffles(2, 2)) == 6


@pytest.mark.parametrize("key, m", [("c2_c2_trivial", 2), ("c2_on_c3", 6), ("d4_zappa_szep", 2)])
def test_bicomplex_identities(library, key, m):
    X = from_matched_pair(library[key](), m, 2)
    assert X.dim(1, 2) == X.pair.T.order * X.pair.N.order ** 2


@pytest.mark.parametrize("key, m", [("c2_on_c3", 6), ("d4_zappa_szep", 2)])
def test_face_sums_restrict_to_the_double_complex(library, key, m):
    mp = library[key]()
    X = from_matched_pair(mp, m, 2, check=False)
    X.check_against_double_complex(build_double_complex(mp, m, 2, 2, check=False))


def test_bounds_are_enforced(s3_pair):
    X = from_matched_pair(s3_pair, 6, 2, check=False)
    with pytest.raises(InsufficientBounds):
        X.h_coface(2, 0, 0)
    with pytest.raises(ValidationError):
        verify_ez(X, 2)


@pytest.mark.parametrize("key, m", [("c2_c2_trivial", 2), ("c2_on_c3", 6)])
def test_edge_free_total_complex_gives_matched_pair_cohomology(library, key, m):
    mp = library[key]()
    X = from_matched_pair(mp, m, 3, check=False)
    tot = X.tot(3, skip_edges=True)
    assert tot.cohomology(2).invariant_factors == matched_pair_cohomology(mp, m, 1).invariant_factors


def test_rows_and_columns_satisfy_dold_kan(s3_pair):
    X = from_matched_pair(s3_pair, 6, 4, check=False)
    for cosimplicial_object in (X.row(1), X.column(1)):
        comparison = dold_kan_comparison(cosimplicial_object, 3)
        assert sorted(comparison) == [0, 1, 2, 3]
        assert all(comparison.values())


def test_alexander_whitney_and_shuffle_are_chain_maps(s3_pair):
    X = from_matched_pair(s3_pair, 6, 2, check=False)
    assert alexander_whitney(X, 2).is_chain_map()
    assert shuffle(X, 2).is_chain_map()


def test_shuffle_sign_conventions(s3_pair):
    X = from_matched_pair(s3_pair, 6, 2, check=False)
    a, b = shuffle_block(X, 1, 1, "a"), shuffle_block(X, 1, 1, "b")
    assert np.array_equal(b, (-a) % 6)
    assert np.array_equal(shuffle_block(X, 2, 0, "a"), shuffle_block(X, 2, 0, "b"))
    with pytest.raises(ValidationError):
        shuffle_block(X, 1, 1, "c")


def test_eilenberg_zilber_for_a_trivial_pair(trivial_c2):
    report = verify_ez(from_matched_pair(trivial_c2, 2, 3), 2)
    assert report.verified
    assert all(report.mutually_inverse.values())
    assert [report.tot_cohomology[n].invariant_factors for n in range(3)] == \
        [report.diag_cohomology[n].invariant_factors for n in range(3)]


@pytest.mark.parametrize("key", ["c2_on_c3", "c2_c3_trivial"])
def test_eilenberg_zilber_at_modulus_six(library, key):
    report = verify_ez(from_matched_pair(library[key](), 6, 3), 2)
    assert report.verified
    assert report.mutually_inverse == {0: True, 1: True, 2: True}


def test_total_cohomology_of_the_triangle_pair(s3_pair):
    report = verify_ez(from_matched_pair(s3_pair, 6, 3), 2)
    assert [report.tot_cohomology[n].invariant_factors for n in range(3)] == [[6], [2], [2]]
