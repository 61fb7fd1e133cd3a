import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

try:
    from ..barcomplex import normalized_index, normalized_tuples
    from ..core.errors import CompositionNotZero, InsufficientBounds, ValidationError
    from ..core.size_guard import SizeGuard, default_guard
    from ..fingroup import GroupMatchedPair, act_left_tuples, act_right_tuples
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from barcomplex import normalized_index, normalized_tuples
    from core.errors import CompositionNotZero, InsufficientBounds, ValidationError
    from core.size_guard import SizeGuard, default_guard
    from fingroup import GroupMatchedPair, act_left_tuples, act_right_tuples

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


@dataclass
class MPCohomologyClass:
    """A class of ℋ^i given by components f_j ∈ C^{j, i+1-j}, 1 ≤ j ≤ i"""
    degree: int
    components: Dict[int, np.ndarray]
    coordinates: Tuple[int, ...] = ()

    def component(self, j: int) -> np.ndarray:
        return self.components[j]


class MPDoubleComplex:
    """Normalized cochains C^{p,q} = maps T^p × N^q → ℤ/m with the twisted differentials.

    δ_N: C^{p,q} → C^{p,q+1} and δ_T: C^{p,q} → C^{p+1,q}; matrices are built on
    first use and cached. Edge cells (p = 0 or q = 0) are available too.
    """

    def __init__(self, mp: GroupMatchedPair, m: int, p_max: int, q_max: int, guard: Optional[SizeGuard] = None):
        if m < 2:
            raise ValidationError("coefficient modulus must be at least 2")
        self.pair = mp
        self.modulus = m
        self.p_max = p_max
        self.q_max = q_max
        self.guard = guard or default_guard()
        self.guard.check_group(mp.bismash_order, label=f"bismash product of {mp.name or 'the pair'}")
        self._delta_N: Dict[Cell, np.ndarray] = {}
        self._delta_T: Dict[Cell, np.ndarray] = {}

    # --- shapes ------------------------------------------------------------
    @property
    def t_base(self) -> int:
        return self.pair.T.order - 1

    @property
    def n_base(self) -> int:
        return self.pair.N.order - 1

    def dim(self, p: int, q: int) -> int:
        return self.t_base ** p * self.n_base ** q

    def cell_index(self, p: int, q: int, ts: np.ndarray, ns: np.ndarray) -> np.ndarray:
        return normalized_index(ts, self.pair.T.order) * self.n_base ** q + normalized_index(ns, self.pair.N.order)

    def cell_arguments(self, p: int, q: int) -> Tuple[np.ndarray, np.ndarray]:
        """Argument tuples (T-part, N-part) for every coordinate of C^{p,q}, in index order"""
        ts = normalized_tuples(self.pair.T.order, p)
        ns = normalized_tuples(self.pair.N.order, q)
        return np.repeat(ts, ns.shape[0], axis=0), np.tile(ns, (ts.shape[0], 1))

    def evaluate(self, p: int, q: int, values: np.ndarray, ts: np.ndarray, ns: np.ndarray) -> np.ndarray:
        """Values of a C^{p,q} cochain at argument rows (ts is K × p, ns is K × q).

        Zero wherever an argument is the identity.
        """
        ts = np.asarray(ts, dtype=np.int64)
        ns = np.asarray(ns, dtype=np.int64)
        keep = np.all(ts != 0, axis=1) & np.all(ns != 0, axis=1)
        out = np.zeros(keep.size, dtype=np.int64)
        if np.any(keep):
            out[keep] = np.asarray(values, dtype=np.int64)[self.cell_index(p, q, ts[keep], ns[keep])]
        return out

    def _check_cell(self, p: int, q: int) -> None:
        if p < 0 or q < 0 or p > self.p_max or q > self.q_max:
            raise InsufficientBounds(
                f"cell C^{{{p},{q}}} lies outside the bounds p ≤ {self.p_max}, q ≤ {self.q_max}",
                {"cell": [p, q], "bounds": [self.p_max, self.q_max]},
            )

    # --- differentials ---------------------------------------------------
    def delta_N(self, p: int, q: int) -> np.ndarray:
        """δ_N: C^{p,q} → C^{p,q+1}"""
        key = (p, q)
        if key not in self._delta_N:
            self._check_cell(p, q + 1)
            self.guard.check_matrix(self.dim(p, q + 1), self.dim(p, q), label=f"δ_N on C^{p},{q}")
            self._delta_N[key] = self._build_delta_N(p, q)
        return self._delta_N[key]

    def delta_T(self, p: int, q: int) -> np.ndarray:
        """δ_T: C^{p,q} → C^{p+1,q}"""
        key = (p, q)
        if key not in self._delta_T:
            self._check_cell(p + 1, q)
            self.guard.check_matrix(self.dim(p + 1, q), self.dim(p, q), label=f"δ_T on C^{p},{q}")
            self._delta_T[key] = self._build_delta_T(p, q)
        return self._delta_T[key]

    def _scatter(self, rows: int, cols: int, faces) -> np.ndarray:
        D = np.zeros((rows, cols), dtype=np.int64)
        for targets, sources, sign in faces:
            if targets.size:
                np.add.at(D, (targets, sources), sign)
        return D % self.modulus

    def _build_delta_N(self, p: int, q: int) -> np.ndarray:
        mp, N = self.pair, self.pair.N
        ts, ns = self.cell_arguments(p, q + 1)
        targets = np.arange(ts.shape[0], dtype=np.int64)
        faces = []

        # f(𝐭◁n0; n1, ..., n_q)
        shifted = act_right_tuples(mp, ts, ns[:, 0]) if p else ts
        faces.append((targets, self.cell_index(p, q, shifted, ns[:, 1:]), 1))

        for i in range(1, q + 1):
            merged = N.mul[ns[:, i - 1], ns[:, i]]
            keep = merged != 0
            sources = np.concatenate([ns[:, :i - 1], merged[:, None], ns[:, i + 1:]], axis=1)
            faces.append((targets[keep], self.cell_index(p, q, ts[keep], sources[keep]), -1 if i % 2 else 1))

        faces.append((targets, self.cell_index(p, q, ts, ns[:, :q]), -1 if (q + 1) % 2 else 1))
        return self._scatter(ts.shape[0], self.dim(p, q), faces)

    def _build_delta_T(self, p: int, q: int) -> np.ndarray:
        # stored left to right as (g1, ..., g_{p+1}); written right to left this is (t_p, ..., t_0)
        mp, T = self.pair, self.pair.T
        gs, ns = self.cell_arguments(p + 1, q)
        targets = np.arange(gs.shape[0], dtype=np.int64)
        faces = []

        # f(g1, ..., g_p; g_{p+1}▷𝐧)
        moved = act_left_tuples(mp, gs[:, p], ns) if q else ns
        faces.append((targets, self.cell_index(p, q, gs[:, :p], moved), 1))

        for i in range(1, p + 1):
            a, b = p - i, p + 1 - i  # zero-based positions of g_{p+1-i}, g_{p+2-i}
            merged = T.mul[gs[:, a], gs[:, b]]
            keep = merged != 0
            sources = np.concatenate([gs[:, :a], merged[:, None], gs[:, b + 1:]], axis=1)
            faces.append((targets[keep], self.cell_index(p, q, sources[keep], ns[keep]), -1 if i % 2 else 1))

        faces.append((targets, self.cell_index(p, q, gs[:, 1:], ns), -1 if (p + 1) % 2 else 1))
        return self._scatter(gs.shape[0], self.dim(p, q), faces)

    def check_relations(self) -> None:
        """δ_N² = 0, δ_T² = 0 and δ_Tδ_N = δ_Nδ_T on every cell inside the bounds"""
        m = self.modulus
        for p in range(self.p_max + 1):
            for q in range(self.q_max + 1):
                if q + 2 <= self.q_max and np.any(self.delta_N(p, q + 1) @ self.delta_N(p, q) % m):
                    raise CompositionNotZero(f"δ_N∘δ_N ≠ 0 at C^{{{p},{q}}}", {"cell": [p, q]})
                if p + 2 <= self.p_max and np.any(self.delta_T(p + 1, q) @ self.delta_T(p, q) % m):
                    raise CompositionNotZero(f"δ_T∘δ_T ≠ 0 at C^{{{p},{q}}}", {"cell": [p, q]})
                if p + 1 <= self.p_max and q + 1 <= self.q_max:
                    TN = self.delta_T(p, q + 1) @ self.delta_N(p, q) % m
                    NT = self.delta_N(p + 1, q) @ self.delta_T(p, q) % m
                    if not np.array_equal(TN, NT):
                        raise CompositionNotZero(f"δ_T and δ_N do not commute at C^{{{p},{q}}}", {"cell": [p, q]})

    # --- total complex of the edge-deleted part ----------------------------
    def tot_cells(self, n: int) -> List[Cell]:
        """Cells (p, q) with p + q = n and p, q ≥ 1, ordered by p"""
        return [(p, n - p) for p in range(1, n)]

    def tot_offsets(self, n: int) -> Dict[Cell, int]:
        offsets, position = {}, 0
        for cell in self.tot_cells(n):
            offsets[cell] = position
            position += self.dim(*cell)
        return offsets

    def tot_dim(self, n: int) -> int:
        return sum(self.dim(*cell) for cell in self.tot_cells(n))

    def total_differential(self, n: int) -> np.ndarray:
        """D = δ_T + (-1)^p δ_N from Tot^n to Tot^{n+1}"""
        for p, q in self.tot_cells(n + 1):
            self._check_cell(p, q)
        source, target = self.tot_offsets(n), self.tot_offsets(n + 1)
        D = np.zeros((self.tot_dim(n + 1), self.tot_dim(n)), dtype=np.int64)
        m = self.modulus
        for (p, q), col in source.items():
            width = self.dim(p, q)
            if (p + 1, q) in target:
                row = target[(p + 1, q)]
                D[row:row + self.dim(p + 1, q), col:col + width] += self.delta_T(p, q)
            if (p, q + 1) in target:
                row = target[(p, q + 1)]
                sign = -1 if p % 2 else 1
                D[row:row + self.dim(p, q + 1), col:col + width] += sign * self.delta_N(p, q)
        return D % m

    def split(self, n: int, vector: np.ndarray) -> Dict[int, np.ndarray]:
        """Components of a Tot^n vector keyed by the T-degree p"""
        out = {}
        for (p, q), offset in self.tot_offsets(n).items():
            out[p] = np.asarray(vector[offset:offset + self.dim(p, q)], dtype=np.int64)
        return out

    def join(self, n: int, components: Dict[int, np.ndarray]) -> np.ndarray:
        vector = np.zeros(self.tot_dim(n), dtype=np.int64)
        for (p, q), offset in self.tot_offsets(n).items():
            if p in components:
                vector[offset:offset + self.dim(p, q)] = components[p]
        return vector % self.modulus


def build_double_complex(mp: GroupMatchedPair, m: int, p_max: int, q_max: int,
                         guard: Optional[SizeGuard] = None, check: bool = True) -> MPDoubleComplex:
    complex_ = MPDoubleComplex(mp, m, p_max, q_max, guard)
    if check:
        complex_.check_relations()
    logger.debug(f"Double complex of {mp.name or 'pair'} mod {m} up to ({p_max}, {q_max})")
    return complex_
