"""Standard finite groups and matched pairs used by fixtures, tests and the command line."""

import itertools
import logging
import math
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

try:
    from ..core.errors import ValidationError
    from ..core.size_guard import default_guard
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import ValidationError
    from core.size_guard import default_guard

from .groups import FiniteGroup, validate_group
from .matched_pair import GroupMatchedPair, from_exact_factorization, trivial_matched_pair, validate_matched_pair

logger = logging.getLogger(__name__)


def _check_size(label: str, n: int, order: int) -> None:
    """Reject a nonpositive parameter, and a multiplication table the size guard would refuse"""
    if n < 1:
        raise ValidationError(f"{label} needs a positive size, got {n}", {"group": label, "size": n})
    default_guard().check_matrix(order, order, f"multiplication table of {label}")


def cyclic(n: int) -> FiniteGroup:
    _check_size(f"C{n}", n, n)
    elements = np.arange(n)
    table = (elements[:, None] + elements[None, :]) % n
    return validate_group(table, [f"c^{k}" if k else "1" for k in range(n)], name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon (order 2n): index k is r^k, index n + k is r^k·s"""
    _check_size(f"D{n}", n, 2 * n)
    table = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for a, e in itertools.product(range(n), range(2)):
        for b, f in itertools.product(range(n), range(2)):
            k = (a + (b if e == 0 else -b)) % n
            table[e * n + a, f * n + b] = ((e + f) % 2) * n + k
    names = [f"r^{k}" if k else "1" for k in range(n)] + [f"r^{k}s" if k else "s" for k in range(n)]
    return validate_group(table, names, name=f"D{n}")


def permutation_group(generators: Sequence[Permutation], name: str = "") -> Tuple[FiniteGroup, List[Permutation]]:
    """Table of the group generated by ``generators``, elements sorted by array form (identity first)"""
    group = PermutationGroup(list(generators))
    elements = sorted(group.generate(), key=lambda p: p.array_form)
    index = {tuple(p.array_form): i for i, p in enumerate(elements)}
    table = [[index[tuple((p * q).array_form)] for q in elements] for p in elements]
    names = [str(p.cyclic_form) if p.cyclic_form else "()" for p in elements]
    return validate_group(table, names, name=name), elements


def symmetric(n: int) -> FiniteGroup:
    # 13!² already exceeds the default cell limit
    _check_size(f"S{n}", n, math.factorial(min(n, 13)))
    elements = [Permutation(list(p)) for p in itertools.permutations(range(n))]
    group, _ = permutation_group(elements, name=f"S{n}")
    return group


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G × H with (g, h) at index g·|H| + h"""
    g, h = np.divmod(np.arange(G.order * H.order), H.order)
    table = G.mul[g[:, None], g[None, :]] * H.order + H.mul[h[:, None], h[None, :]]
    names = [f"({G.label(a)},{H.label(b)})" for a, b in zip(g, h)]
    return validate_group(table, names, name=f"{G.name}×{H.name}")


def semidirect_pair(T: FiniteGroup, N: FiniteGroup, automorphism: Callable[[int, int], int],
                    name: str = "") -> GroupMatchedPair:
    """T acting on N by automorphisms with trivial right action (bismash = N⋊T)"""
    left = np.array([[automorphism(t, n) for n in range(N.order)] for t in range(T.order)], dtype=np.int64)
    right = np.tile(np.arange(T.order, dtype=np.int64)[:, None], (1, N.order))
    return validate_matched_pair(T, N, left, right, name=name)


def inversion_pair(n: int) -> GroupMatchedPair:
    """C2 acting on Cn by inversion"""
    T, N = cyclic(2), cyclic(n)
    return semidirect_pair(T, N, lambda t, x: N.inverse(x) if t else x, name=f"C2⋉C{n}")


def s4_factorization() -> GroupMatchedPair:
    """S4 = S3·⟨(0 1 2 3)⟩ with S3 the stabilizer of 3; neither factor is normal"""
    F, perms = permutation_group([Permutation(list(p)) for p in itertools.permutations(range(4))], name="S4")
    N_elems = [i for i, p in enumerate(perms) if p.array_form[3] == 3]
    cycle = Permutation([1, 2, 3, 0])
    T_elems = [perms.index(cycle ** k) for k in range(4)]
    return from_exact_factorization(F, N_elems, T_elems, name="S3·C4")


def d4_factorization() -> GroupMatchedPair:
    """D4 = ⟨s⟩·⟨r⟩: the reflection subgroup times the normal rotation subgroup"""
    F = dihedral(4)
    return from_exact_factorization(F, [0, 4], [0, 1, 2, 3], name="C2·C4")


def standard_pairs() -> Dict[str, Callable[[], GroupMatchedPair]]:
    """Named pairs exercised by the test-suite and accepted by the command line"""
    return {
        "c2_c2_trivial": lambda: trivial_matched_pair(cyclic(2), cyclic(2), name="C2×C2"),
        "c2_c3_trivial": lambda: trivial_matched_pair(cyclic(2), cyclic(3), name="C2×C3"),
        "c2_on_c3": lambda: inversion_pair(3),
        "c2_on_c4": lambda: inversion_pair(4),
        "d4_zappa_szep": d4_factorization,
        "s4_zappa_szep": s4_factorization,
    }
