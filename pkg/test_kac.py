import numpy as np
import pytest

from barcomplex import build_bar_complex, group_cohomology, is_group_cocycle
from core.errors import CompatibilityFailed, NotACocycle, ValidationError
from exactlin import kernel_mod, solve_mod
from kac import KacMaps, assemble_cocycle, decompose_cocycle, delta_pair, phi, psi, res2, verify_kac_exactness
from mpcomplex import matched_pair_cohomology


@pytest.mark.parametrize("key, m", [("c2_c2_trivial", 2), ("c2_c3_trivial", 6), ("c2_on_c3", 6),
                                    ("c2_on_c3", 12), ("c2_on_c4", 2), ("c2_on_c4", 4), ("c2_on_c4", 12)])
def test_low_degree_sequence_is_exact(library, key, m):
    report = verify_kac_exactness(library[key](), m)
    assert report.all_exact, [v for v in report.verdicts if not v.exact]
    assert report.injective_at_start
    assert all(report.complex_property.values())
    assert all(report.well_defined.values())
    assert report.psi_outputs_are_cocycles
    assert report.h3_computed
    assert [v.position for v in report.verdicts] == [
        "H^1(T)+H^1(N)", "ℋ^1(T,N)", "H^2(H)", "H^2(T)+H^2(N)", "ℋ^2(T,N)",
    ]


@pytest.mark.slow
@pytest.mark.parametrize("m", [2, 6])
def test_sequence_for_a_nontrivial_right_action(library, m):
    assert verify_kac_exactness(library["d4_zappa_szep"](), m).all_exact


@pytest.mark.slow
def test_sequence_without_presenting_third_cohomology(library):
    report = verify_kac_exactness(library["s4_zappa_szep"](), 2, h3_max_order=8)
    assert not report.h3_computed
    assert "psi" not in report.maps
    assert report.all_exact


def test_third_cohomology_is_skipped_above_the_limit(s3_pair):
    report = verify_kac_exactness(s3_pair, 6, h3_max_order=4)
    assert not report.h3_computed
    assert "H^3(H)" not in report.groups
    assert report.all_exact


def test_group_summaries_for_the_triangle_group(s3_pair):
    report = verify_kac_exactness(s3_pair, 6)
    assert report.groups["H^2(H)"].invariant_factors == [2]
    assert report.groups["H^1(H)"].invariant_factors == [2]


def test_unknown_convention_is_rejected(s3_pair):
    with pytest.raises(ValidationError):
        KacMaps(s3_pair, 6, convention="c")


def test_cochain_level_maps_produce_cocycles(s3_pair):
    m = 6
    maps = KacMaps(s3_pair, m)
    H = maps.H

    h2 = group_cohomology(H, m, 2)
    for k in range(h2.rank):
        a, b = res2(s3_pair, m, h2.generators[:, k])
        assert is_group_cocycle(s3_pair.T, a, 2, m)
        assert is_group_cocycle(s3_pair.N, b, 2, m)
        assert sorted(delta_pair(s3_pair, m, a, b).components) == [1, 2]

    mp1 = matched_pair_cohomology(s3_pair, m, 1, complex_=maps.complex_)
    for k in range(mp1.rank):
        assert is_group_cocycle(H, phi(s3_pair, m, mp1.generators[:, k]), 2, m)

    mp2 = matched_pair_cohomology(s3_pair, m, 2, complex_=maps.complex_)
    for k in range(mp2.rank):
        parts = maps.complex_.split(3, mp2.generators[:, k])
        assert is_group_cocycle(H, psi(s3_pair, m, parts[1], parts[2]), 3, m)


def test_res_rejects_non_cocycles(s3_pair):
    maps = KacMaps(s3_pair, 6)
    f = np.zeros((maps.H.order - 1) ** 2, dtype=np.int64)
    f[0] = 1
    with pytest.raises(NotACocycle):
        maps.res(f, 2)


def test_decomposition_reassembles_every_cocycle(s3_pair):
    m = 6
    maps = KacMaps(s3_pair, m)
    bar = build_bar_complex(maps.H, m, 3)
    cocycles = kernel_mod(bar.differential(2), m)
    assert cocycles.shape[1] > 1
    for k in range(cocycles.shape[1]):
        f = cocycles[:, k]
        d = decompose_cocycle(s3_pair, m, f, maps=maps)
        assembled = assemble_cocycle(s3_pair, m, d.f_T, d.f_N, (-d.f_c) % m, maps=maps)
        assert solve_mod(bar.differential(1), (assembled - f) % m, m) is not None


def test_decomposition_of_a_non_cocycle(s3_pair):
    maps = KacMaps(s3_pair, 6)
    f = np.zeros((maps.H.order - 1) ** 2, dtype=np.int64)
    f[0] = 1
    with pytest.raises(NotACocycle):
        decompose_cocycle(s3_pair, 6, f, maps=maps)


def test_assembly_checks_compatibility(s3_pair):
    maps = KacMaps(s3_pair, 6)
    c = maps.complex_
    a = np.zeros(c.dim(2, 0), dtype=np.int64)
    b = np.zeros(c.dim(0, 2), dtype=np.int64)
    gamma = np.ones(c.dim(1, 1), dtype=np.int64)
    with pytest.raises(CompatibilityFailed):
        assemble_cocycle(s3_pair, 6, a, b, gamma, maps=maps)
