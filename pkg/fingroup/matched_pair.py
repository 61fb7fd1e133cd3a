import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .groups import FiniteGroup, induced_subgroup, is_subgroup, validate_group

try:
    from ..core.errors import AxiomViolation, NotExactFactorization, NotSubgroup, ValidationError
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import AxiomViolation, NotExactFactorization, NotSubgroup, ValidationError

logger = logging.getLogger(__name__)

MATCHED_PAIR_AXIOMS = ("left_action", "right_action", "left_compatibility", "right_compatibility")


@dataclass(frozen=True)
class GroupMatchedPair:
    """Groups T and N acting on each other.

    ``act_left[t, n]`` is t▷n ∈ N and ``act_right[t, n]`` is t◁n ∈ T, so that
    t·n = (t▷n)·(t◁n) in the bismash product.
    """
    T: FiniteGroup
    N: FiniteGroup
    act_left: np.ndarray
    act_right: np.ndarray
    name: str = ""

    def left(self, t: int, n: int) -> int:
        return int(self.act_left[t, n])

    def right(self, t: int, n: int) -> int:
        return int(self.act_right[t, n])

    @property
    def left_is_trivial(self) -> bool:
        return bool(np.all(self.act_left == np.arange(self.N.order)[None, :]))

    @property
    def right_is_trivial(self) -> bool:
        return bool(np.all(self.act_right == np.arange(self.T.order)[:, None]))

    @property
    def bismash_order(self) -> int:
        return self.T.order * self.N.order

    def __repr__(self) -> str:
        return f"<GroupMatchedPair {self.name or ''} |T|={self.T.order} |N|={self.N.order}>"


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return [int(v) for v in hits[0]] if hits.size else None


def validate_matched_pair(T: FiniteGroup, N: FiniteGroup, act_left, act_right, name: str = "") -> GroupMatchedPair:
    """Check the action and compatibility axioms over all triples"""
    left = np.asarray(act_left, dtype=np.int64)
    right = np.asarray(act_right, dtype=np.int64)
    shape = (T.order, N.order)
    if left.shape != shape or right.shape != shape:
        raise ValidationError(
            f"action tables must have shape {shape}, got {left.shape} and {right.shape}",
            {"expected": list(shape)},
        )
    if np.any((left < 0) | (left >= N.order)) or np.any((right < 0) | (right >= T.order)):
        raise ValidationError("action table entry out of range")

    t_idx = np.arange(T.order)
    n_idx = np.arange(N.order)

    # 1▷n = n and (ts)▷n = t▷(s▷n)
    witness = _first(left[0] != n_idx)
    if witness is not None:
        raise AxiomViolation("left_action", {"t": 0, "n": witness[0]})
    composed = left[T.mul]                                   # [t, s, n] -> (ts)▷n
    iterated = left[t_idx[:, None, None], left[None, :, :]]  # [t, s, n] -> t▷(s▷n)
    witness = _first(composed != iterated)
    if witness is not None:
        raise AxiomViolation("left_action", dict(zip(("t", "s", "n"), witness)))

    # t◁1 = t and t◁(nm) = (t◁n)◁m
    witness = _first(right[:, 0] != t_idx)
    if witness is not None:
        raise AxiomViolation("right_action", {"t": witness[0], "n": 0})
    composed = right[:, N.mul]                               # [t, n, m] -> t◁(nm)
    iterated = right[right[:, :, None], n_idx[None, None, :]]  # [t, n, m] -> (t◁n)◁m
    witness = _first(composed != iterated)
    if witness is not None:
        raise AxiomViolation("right_action", dict(zip(("t", "n", "m"), witness)))

    # t▷(nm) = (t▷n)·((t◁n)▷m), which forces t▷1 = 1
    witness = _first(left[:, 0] != 0)
    if witness is not None:
        raise AxiomViolation("left_compatibility", {"t": witness[0], "n": 0})
    lhs = left[:, N.mul]                                     # [t, n, m]
    rhs = N.mul[left[:, :, None], left[right[:, :, None], n_idx[None, None, :]]]
    witness = _first(lhs != rhs)
    if witness is not None:
        raise AxiomViolation("left_compatibility", dict(zip(("t", "n", "m"), witness)))

    # (ts)◁n = (t◁(s▷n))·(s◁n), which forces 1◁n = 1
    witness = _first(right[0] != 0)
    if witness is not None:
        raise AxiomViolation("right_compatibility", {"t": 0, "n": witness[0]})
    lhs = right[T.mul]                                       # [t, s, n]
    inner = right[t_idx[:, None, None], left[None, :, :]]    # t◁(s▷n)
    rhs = T.mul[inner, right[None, :, :]]
    witness = _first(lhs != rhs)
    if witness is not None:
        raise AxiomViolation("right_compatibility", dict(zip(("t", "s", "n"), witness)))

    logger.debug(f"Validated matched pair {name or '(unnamed)'}: |T|={T.order}, |N|={N.order}")
    return GroupMatchedPair(T=T, N=N, act_left=left, act_right=right, name=name)


def trivial_matched_pair(T: FiniteGroup, N: FiniteGroup, name: str = "") -> GroupMatchedPair:
    left = np.tile(np.arange(N.order, dtype=np.int64), (T.order, 1))
    right = np.tile(np.arange(T.order, dtype=np.int64)[:, None], (1, N.order))
    return validate_matched_pair(T, N, left, right, name=name)


def from_exact_factorization(F: FiniteGroup, N_elems: Sequence[int], T_elems: Sequence[int],
                             name: str = "") -> GroupMatchedPair:
    """Matched pair of an exact factorization F = N·T: t·n = (t▷n)·(t◁n) in F"""
    N_elems = [int(e) for e in N_elems]
    T_elems = [int(e) for e in T_elems]
    for label, elements in (("N", N_elems), ("T", T_elems)):
        outside = sorted(e for e in set(elements) if not 0 <= e < F.order)
        if outside:
            raise NotSubgroup(f"{label} names elements {outside} outside the ambient group of order {F.order}",
                              {"factor": label, "elements": outside})
        if len(set(elements)) != len(elements) or not is_subgroup(F, elements):
            raise NotSubgroup(f"{label} = {elements} is not a subgroup of the ambient group", {"factor": label})
    if set(N_elems) & set(T_elems) != {0}:
        raise NotExactFactorization("N ∩ T is not trivial", {"intersection": sorted(set(N_elems) & set(T_elems))})
    if len(N_elems) * len(T_elems) != F.order:
        raise NotExactFactorization(
            f"|N|·|T| = {len(N_elems) * len(T_elems)} differs from |F| = {F.order}",
            {"N": len(N_elems), "T": len(T_elems), "F": F.order},
        )

    # identity first, remaining elements in the given order
    N_elems = [0] + [e for e in N_elems if e != 0]
    T_elems = [0] + [e for e in T_elems if e != 0]
    N = induced_subgroup(F, N_elems, name=f"{name}.N" if name else "N")
    T = induced_subgroup(F, T_elems, name=f"{name}.T" if name else "T")

    decomposition = {}
    for i, n in enumerate(N_elems):
        for j, t in enumerate(T_elems):
            decomposition[F.multiply(n, t)] = (i, j)

    left = np.zeros((T.order, N.order), dtype=np.int64)
    right = np.zeros((T.order, N.order), dtype=np.int64)
    for j, t in enumerate(T_elems):
        for i, n in enumerate(N_elems):
            left[j, i], right[j, i] = decomposition[F.multiply(t, n)]

    logger.info(f"Exact factorization {name or ''}: |N|={N.order}, |T|={T.order}")
    return validate_matched_pair(T, N, left, right, name=name)


@dataclass(frozen=True)
class BismashGroup:
    """N⋈T on pairs (n, t), stored at index n·|T| + t, so index 0 is the identity"""
    pair: GroupMatchedPair
    group: FiniteGroup

    def element(self, n: int, t: int) -> int:
        return int(n) * self.pair.T.order + int(t)

    def components(self, x: int) -> Tuple[int, int]:
        n, t = divmod(int(x), self.pair.T.order)
        return n, t

    @property
    def n_component(self) -> np.ndarray:
        return np.arange(self.group.order, dtype=np.int64) // self.pair.T.order

    @property
    def t_component(self) -> np.ndarray:
        return np.arange(self.group.order, dtype=np.int64) % self.pair.T.order

    def inject_N(self) -> np.ndarray:
        return np.arange(self.pair.N.order, dtype=np.int64) * self.pair.T.order

    def inject_T(self) -> np.ndarray:
        return np.arange(self.pair.T.order, dtype=np.int64)

    def antipode(self, x: int) -> int:
        """(n, t)⁻¹ = (t⁻¹▷n⁻¹, t⁻¹◁n⁻¹)"""
        n, t = self.components(x)
        t_inv, n_inv = self.pair.T.inverse(t), self.pair.N.inverse(n)
        return self.element(self.pair.left(t_inv, n_inv), self.pair.right(t_inv, n_inv))


def bismash(mp: GroupMatchedPair) -> BismashGroup:
    """(n, t)(m, s) = (n·(t▷m), (t◁m)·s)"""
    T, N = mp.T, mp.N
    order = T.order * N.order
    x = np.arange(order)
    n, t = x // T.order, x % T.order
    n1, t1 = n[:, None], t[:, None]
    n2, t2 = n[None, :], t[None, :]
    new_n = N.mul[n1, mp.act_left[t1, n2]]
    new_t = T.mul[mp.act_right[t1, n2], t2]
    table = new_n * T.order + new_t

    names = None
    if N.element_names or T.element_names:
        names = [f"({N.label(a)},{T.label(b)})" for a, b in zip(n, t)]
    group = validate_group(table, names, name=f"{mp.name}⋈" if mp.name else "N⋈T")
    return BismashGroup(pair=mp, group=group)


def act_left_tuple(mp: GroupMatchedPair, t: int, ns: Sequence[int]) -> Tuple[int, ...]:
    """t▷(n, 𝐦) = (t▷n, (t◁n)▷𝐦)"""
    out = []
    current = int(t)
    for n in ns:
        out.append(mp.left(current, n))
        current = mp.right(current, n)
    return tuple(out)


def act_right_tuple(mp: GroupMatchedPair, ts: Sequence[int], n: int) -> Tuple[int, ...]:
    """(𝐭, s)◁n = (𝐭◁(s▷n), s◁n)"""
    out = [0] * len(ts)
    current = int(n)
    for i in range(len(ts) - 1, -1, -1):
        out[i] = mp.right(ts[i], current)
        current = mp.left(ts[i], current)
    return tuple(out)


def act_left_tuples(mp: GroupMatchedPair, t: np.ndarray, ns: np.ndarray) -> np.ndarray:
    """Vectorized act_left_tuple: ``t`` has shape (K,), ``ns`` shape (K, q)"""
    out = np.empty_like(ns)
    current = np.asarray(t, dtype=np.int64).copy()
    for i in range(ns.shape[1]):
        out[:, i] = mp.act_left[current, ns[:, i]]
        current = mp.act_right[current, ns[:, i]]
    return out


def act_right_tuples(mp: GroupMatchedPair, ts: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Vectorized act_right_tuple: ``ts`` has shape (K, p), ``n`` shape (K,)"""
    out = np.empty_like(ts)
    current = np.asarray(n, dtype=np.int64).copy()
    for i in range(ts.shape[1] - 1, -1, -1):
        out[:, i] = mp.act_right[ts[:, i], current]
        current = mp.act_left[ts[:, i], current]
    return out
