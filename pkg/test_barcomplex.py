import itertools
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barcomplex import (
    CoefficientModule,
    bar_differential,
    build_bar_complex,
    coboundary_values,
    cohomology_of_complex,
    cohomology_with_module_coefficients,
    group_cohomology,
    induced_map,
    is_group_cocycle,
    stabilization_report,
    tuple_list,
    unnormalized_bar_complex,
)
from core.errors import SizeGuardExceeded, ValidationError
from core.size_guard import SizeGuard
from fingroup import cyclic, dihedral, direct_product, symmetric


def brute_force_order(G, n: int, m: int) -> int:
    """|Z^n| / |B^n| by enumerating every normalized cochain with trivial coefficients"""

    def coboundary(f, degree):
        values = {}
        for args in itertools.product(range(1, G.order), repeat=degree + 1):
            def f_at(t):
                return 0 if 0 in t else f[t]
            total = f_at(args[1:])
            for i in range(1, degree + 1):
                merged = args[:i - 1] + (G.multiply(args[i - 1], args[i]),) + args[i + 1:]
                total += (-1) ** i * f_at(merged)
            total += (-1) ** (degree + 1) * f_at(args[:degree])
            values[args] = total % m
        return values

    def cochains(degree):
        keys = list(itertools.product(range(1, G.order), repeat=degree))
        for values in itertools.product(range(m), repeat=len(keys)):
            yield dict(zip(keys, values))

    cocycles = sum(1 for f in cochains(n) if not any(coboundary(f, n).values()))
    boundaries = {tuple(sorted(coboundary(f, n - 1).items())) for f in cochains(n - 1)} if n > 1 else {()}
    return cocycles // len(boundaries)


@pytest.mark.parametrize("k, m, n", [(2, 2, 1), (2, 4, 2), (3, 6, 1), (3, 6, 2), (4, 6, 2), (5, 3, 2), (4, 4, 3)])
def test_cyclic_groups(k, m, n):
    d = gcd(k, m)
    expected = (d,) if d > 1 else ()
    assert group_cohomology(cyclic(k), m, n).invariant_factors == expected


@pytest.mark.parametrize("G, m, n, expected", [
    (symmetric(3), 6, 1, (2,)),
    (symmetric(3), 6, 2, (2,)),
    (symmetric(3), 36, 2, (2,)),
    (direct_product(cyclic(2), cyclic(2)), 2, 1, (2, 2)),
    (direct_product(cyclic(2), cyclic(2)), 2, 2, (2, 2, 2)),
    (dihedral(4), 2, 1, (2, 2)),
])
def test_known_values(G, m, n, expected):
    assert group_cohomology(G, m, n).invariant_factors == expected


@pytest.mark.parametrize("G, n, m", [
    (cyclic(2), 1, 2), (cyclic(2), 2, 4), (cyclic(3), 1, 3), (cyclic(3), 2, 4),
    (cyclic(4), 1, 4), (cyclic(4), 2, 3), (direct_product(cyclic(2), cyclic(2)), 2, 2),
])
def test_agrees_with_brute_force_enumeration(G, n, m):
    assert group_cohomology(G, m, n).order == brute_force_order(G, n, m)


@pytest.mark.parametrize("G", [cyclic(3), symmetric(3), direct_product(cyclic(2), cyclic(2))])
def test_normalized_and_unnormalized_complexes_agree(G):
    for n in (1, 2):
        normalized = group_cohomology(G, 6, n)
        full = cohomology_of_complex(unnormalized_bar_complex(G, 6, n + 1), n)
        assert normalized.invariant_factors == full.invariant_factors


def test_differentials_compose_to_zero():
    complex_ = build_bar_complex(symmetric(3), 6, 3)
    for n in range(1, 3):
        assert not np.any((complex_.differential(n) @ complex_.differential(n - 1)) % 6)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=5, max_size=5))
def test_coboundaries_are_cocycles(values):
    G = symmetric(3)
    f = np.array(values, dtype=np.int64)
    df = coboundary_values(G, f, 1, 6)
    assert is_group_cocycle(G, df, 2, 6)
    d1 = bar_differential(G, CoefficientModule.trivial(G.order, 6), 1)
    assert np.array_equal((d1 @ f) % 6, df)


def test_tuple_ordering_is_big_endian():
    assert tuple_list(3, 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_sign_module_coefficients():
    C2 = cyclic(2)
    sign4 = CoefficientModule.cyclic(4, [1, -1])
    assert cohomology_with_module_coefficients(C2, sign4, 1).invariant_factors == (2,)
    assert cohomology_with_module_coefficients(C2, sign4, 2).invariant_factors == (2,)
    sign3 = CoefficientModule.cyclic(3, [1, -1])
    assert cohomology_with_module_coefficients(C2, sign3, 1).invariant_factors == ()


def test_module_action_must_be_a_homomorphism():
    with pytest.raises(ValidationError):
        cohomology_with_module_coefficients(cyclic(2), CoefficientModule.cyclic(5, [1, 2]), 1)


def test_inversion_acts_by_minus_one_on_first_cohomology():
    C3 = cyclic(3)
    inversion = induced_map(C3, C3, [0, 2, 1], 3, 1)
    assert inversion.matrix.tolist() == [[2]]
    assert inversion.is_isomorphism()
    assert inversion.then(inversion).is_identity()


def test_non_homomorphism_is_rejected():
    with pytest.raises(ValidationError):
        induced_map(cyclic(3), cyclic(3), [0, 1, 1], 3, 1)


def test_stabilization_against_doubled_modulus():
    assert stabilization_report(cyclic(2), 1, 2).is_isomorphism
    doubled = stabilization_report(cyclic(2), 2, 2)
    assert not doubled.is_isomorphism
    assert doubled.invariant_factors == (2,) and doubled.doubled_invariant_factors == (2,)


def test_size_guard_refuses_large_matrices():
    tight = SizeGuard(max_cells=10)
    with pytest.raises(SizeGuardExceeded) as excinfo:
        group_cohomology(cyclic(5), 5, 2, guard=tight)
    assert excinfo.value.to_dict()["code"] == "size_guard_exceeded"
    forced = SizeGuard(max_cells=10, force=True)
    assert group_cohomology(cyclic(5), 5, 2, guard=forced).invariant_factors == (5,)


def test_group_order_limit():
    with pytest.raises(SizeGuardExceeded):
        group_cohomology(symmetric(3), 6, 1, guard=SizeGuard(max_group_order=4))
