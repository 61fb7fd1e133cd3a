import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

try:
    from ..barcomplex import evaluate_cochain, is_group_cocycle, normalized_tuples
    from ..core.errors import CompatibilityFailed, NotACocycle, OutputCocycleCheckFailed
    from ..core.size_guard import SizeGuard
    from ..fingroup import GroupMatchedPair
    from ..mpcomplex import MPDoubleComplex
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from barcomplex import evaluate_cochain, is_group_cocycle, normalized_tuples
    from core.errors import CompatibilityFailed, NotACocycle, OutputCocycleCheckFailed
    from core.size_guard import SizeGuard
    from fingroup import GroupMatchedPair
    from mpcomplex import MPDoubleComplex

from .maps import KacMaps

logger = logging.getLogger(__name__)


@dataclass
class CocycleDecomposition:
    """A 2-cocycle f on N⋈T, its normalizing 1-cochain g_f and the pieces of h = f + dg_f.

    f_T ∈ C^{2,0}, f_N ∈ C^{0,2} and f_c ∈ C^{1,1} of the double complex.
    """
    f: np.ndarray
    g_f: np.ndarray
    h: np.ndarray
    f_T: np.ndarray
    f_N: np.ndarray
    f_c: np.ndarray


def _coboundary_of_1_cochain(maps: KacMaps, g: np.ndarray) -> np.ndarray:
    """(dg)(x, y) = g(y) − g(xy) + g(x) on normalized pairs of H"""
    H, m = maps.H, maps.modulus
    args = normalized_tuples(H.order, 2)
    x, y = args[:, 0], args[:, 1]
    xy = H.mul[x, y]
    values = evaluate_cochain(g, H.order, y[:, None]) - evaluate_cochain(g, H.order, xy[:, None]) \
        + evaluate_cochain(g, H.order, x[:, None])
    return values % m


def _h_formula(maps: KacMaps, f_T: np.ndarray, f_N: np.ndarray, f_c: np.ndarray) -> np.ndarray:
    """h(x, y) = f_T(t_x◁n_y, t_y) + f_N(n_x, t_x▷n_y) + f_c(t_x, n_y)"""
    mp, c = maps.pair, maps.complex_
    args = normalized_tuples(maps.H.order, 2)
    ns, ts = args // mp.T.order, args % mp.T.order
    empty = np.zeros((args.shape[0], 0), dtype=np.int64)
    shifted = mp.act_right[ts[:, 0], ns[:, 1]]
    moved = mp.act_left[ts[:, 0], ns[:, 1]]
    values = c.evaluate(2, 0, f_T, np.stack([shifted, ts[:, 1]], axis=1), empty) \
        + c.evaluate(0, 2, f_N, empty, np.stack([ns[:, 0], moved], axis=1)) \
        + c.evaluate(1, 1, f_c, ts[:, 0:1], ns[:, 1:2])
    return values % maps.modulus


def _components(maps: KacMaps, f: np.ndarray):
    """(g_f, f_T, f_N, f_c) read off a 2-cochain on H"""
    mp, c, H = maps.pair, maps.complex_, maps.H
    order_T = mp.T.order
    m = maps.modulus

    xs = np.arange(1, H.order, dtype=np.int64)
    n_part, t_part = xs // order_T, xs % order_T
    g_f = evaluate_cochain(f, H.order, np.stack([n_part * order_T, t_part], axis=1)) % m

    ts, _ = c.cell_arguments(2, 0)
    f_T = evaluate_cochain(f, H.order, ts) % m
    _, ns = c.cell_arguments(0, 2)
    f_N = evaluate_cochain(f, H.order, ns * order_T) % m

    ts, ns = c.cell_arguments(1, 1)
    t, n = ts[:, 0], ns[:, 0]
    direct = evaluate_cochain(f, H.order, np.stack([t, n * order_T], axis=1))
    swapped = evaluate_cochain(f, H.order, np.stack([mp.act_left[t, n] * order_T, mp.act_right[t, n]], axis=1))
    f_c = (direct - swapped) % m
    return g_f, f_T, f_N, f_c


def decompose_cocycle(mp: GroupMatchedPair, m: int, f: np.ndarray, maps: Optional[KacMaps] = None,
                      guard: Optional[SizeGuard] = None) -> CocycleDecomposition:
    """Split a normalized 2-cocycle on H into f_T, f_N, f_c and check every identity relating them"""
    maps = maps or KacMaps(mp, m, guard=guard)
    c, H = maps.complex_, maps.H
    f = np.asarray(f, dtype=np.int64) % m
    if not is_group_cocycle(H, f, 2, m):
        raise NotACocycle(f"f is not a 2-cocycle on {H.name}", {"operation": "decompose"})

    g_f, f_T, f_N, f_c = _components(maps, f)
    h = (f + _coboundary_of_1_cochain(maps, g_f)) % m
    decomposition = CocycleDecomposition(f=f, g_f=g_f, h=h, f_T=f_T, f_N=f_N, f_c=f_c)
    _check_decomposition(maps, decomposition)
    return decomposition


def _check_decomposition(maps: KacMaps, d: CocycleDecomposition) -> None:
    c, m = maps.complex_, maps.modulus
    checks = {
        "δ_N f_T = −δ_T f_c": np.array_equal(c.delta_N(2, 0) @ d.f_T % m, (-(c.delta_T(1, 1) @ d.f_c)) % m),
        "δ_T f_N = −δ_N f_c": np.array_equal(c.delta_T(0, 2) @ d.f_N % m, (-(c.delta_N(1, 1) @ d.f_c)) % m),
    }
    h_parts = _components(maps, d.h)
    checks["g_h = 0"] = not np.any(h_parts[0])
    checks["h_T = f_T"] = np.array_equal(h_parts[1], d.f_T)
    checks["h_N = f_N"] = np.array_equal(h_parts[2], d.f_N)
    checks["h on T⊗N = f_c"] = np.array_equal(h_parts[3], d.f_c)
    checks["h = f_T + f_N + f_c"] = np.array_equal(d.h, _h_formula(maps, d.f_T, d.f_N, d.f_c))

    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise OutputCocycleCheckFailed(f"cocycle decomposition identities failed: {failed}", {"failed": failed})
    logger.debug(f"Decomposition identities hold for {maps.pair.name or 'pair'} mod {m}")


def assemble_cocycle(mp: GroupMatchedPair, m: int, a: np.ndarray, b: np.ndarray, gamma: np.ndarray,
                     maps: Optional[KacMaps] = None, guard: Optional[SizeGuard] = None) -> np.ndarray:
    """f(x, y) = a(t_x◁n_y, t_y) + b(n_x, t_x▷n_y) − γ(t_x, n_y), given δ_N a = δ_T γ and δ_T b = δ_N γ"""
    maps = maps or KacMaps(mp, m, guard=guard)
    c, H = maps.complex_, maps.H
    a = np.asarray(a, dtype=np.int64) % m
    b = np.asarray(b, dtype=np.int64) % m
    gamma = np.asarray(gamma, dtype=np.int64) % m

    if not np.array_equal(c.delta_N(2, 0) @ a % m, c.delta_T(1, 1) @ gamma % m):
        raise CompatibilityFailed("δ_N a ≠ δ_T γ", {"equation": "delta_N a = delta_T gamma"})
    if not np.array_equal(c.delta_T(0, 2) @ b % m, c.delta_N(1, 1) @ gamma % m):
        raise CompatibilityFailed("δ_T b ≠ δ_N γ", {"equation": "delta_T b = delta_N gamma"})
    if not is_group_cocycle(mp.T, a, 2, m):
        raise NotACocycle("a is not a 2-cocycle on T", {"operation": "assemble"})
    if not is_group_cocycle(mp.N, b, 2, m):
        raise NotACocycle("b is not a 2-cocycle on N", {"operation": "assemble"})

    f = _h_formula(maps, a, b, (-gamma) % m)
    if not is_group_cocycle(H, f, 2, m):
        raise OutputCocycleCheckFailed("the assembled cochain is not a 2-cocycle on H", {"operation": "assemble"})
    _, f_T, f_N, f_c = _components(maps, f)
    if not (np.array_equal(f_T, a) and np.array_equal(f_N, b) and np.array_equal(f_c, (-gamma) % m)):
        raise OutputCocycleCheckFailed("the assembled cocycle does not restrict to (a, b, −γ)",
                                       {"operation": "assemble"})
    return f
