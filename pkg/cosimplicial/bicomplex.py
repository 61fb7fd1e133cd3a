"""The cosimplicial bicomplex of a matched pair, its Diag and its Tot.

X^{p,q} holds all maps T^p × N^q → ℤ/m (identity arguments allowed). Horizontal
operators move in the T-direction, vertical ones in the N-direction; the
alternating sums of the cofaces are the δ_T and δ_N of the double complex.
"""

import itertools
import logging
from typing import Callable, Dict, Optional, Tuple

import numpy as np

try:
    from ..barcomplex import all_tuples, full_index
    from ..core.errors import CompositionNotZero, CosimplicialIdentityFailed, InsufficientBounds
    from ..core.size_guard import SizeGuard, default_guard
    from ..fingroup import GroupMatchedPair, act_left_tuples, act_right_tuples
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from barcomplex import all_tuples, full_index
    from core.errors import CompositionNotZero, CosimplicialIdentityFailed, InsufficientBounds
    from core.size_guard import SizeGuard, default_guard
    from fingroup import GroupMatchedPair, act_left_tuples, act_right_tuples

from .objects import CochainComplex, CosimplicialObject

logger = logging.getLogger(__name__)

OperatorKey = Tuple[str, int, int, int]


class CosimplicialBicomplex:
    """Horizontal ∂_h^i, σ_h^j and vertical ∂_v^i, σ_v^j on X^{p,q}, p ≤ p_max and q ≤ q_max.

    Operators are built on first use and cached; all are 0/1 pullback matrices.
    """

    def __init__(self, mp: GroupMatchedPair, m: int, p_max: int, q_max: int, guard: Optional[SizeGuard] = None):
        self.pair = mp
        self.modulus = m
        self.p_max = p_max
        self.q_max = q_max
        self.guard = guard or default_guard()
        self.guard.check_group(mp.bismash_order, label=f"bismash product of {mp.name or 'the pair'}")
        self._operators: Dict[OperatorKey, np.ndarray] = {}

    @property
    def name(self) -> str:
        return self.pair.name or "pair"

    # --- cells ---------------------------------------------------------------
    def dim(self, p: int, q: int) -> int:
        return self.pair.T.order ** p * self.pair.N.order ** q

    def arguments(self, p: int, q: int) -> Tuple[np.ndarray, np.ndarray]:
        ts = all_tuples(self.pair.T.order, p)
        ns = all_tuples(self.pair.N.order, q)
        return np.repeat(ts, ns.shape[0], axis=0), np.tile(ns, (ts.shape[0], 1))

    def index(self, p: int, q: int, ts: np.ndarray, ns: np.ndarray) -> np.ndarray:
        return full_index(ts, self.pair.T.order) * self.pair.N.order ** q + full_index(ns, self.pair.N.order)

    def _check_cell(self, p: int, q: int) -> None:
        if p < 0 or q < 0 or p > self.p_max or q > self.q_max:
            raise InsufficientBounds(
                f"X^{{{p},{q}}} lies outside the bounds p ≤ {self.p_max}, q ≤ {self.q_max}",
                {"cell": [p, q], "bounds": [self.p_max, self.q_max]},
            )

    def _pullback(self, key: OperatorKey, source: Tuple[int, int], target: Tuple[int, int],
                  move: Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]) -> np.ndarray:
        """Matrix of f ↦ f∘move, where ``move`` sends target arguments to source arguments"""
        if key not in self._operators:
            self._check_cell(*source)
            self._check_cell(*target)
            rows, cols = self.dim(*target), self.dim(*source)
            self.guard.check_matrix(rows, cols, label=f"{key[0]} on X^{source[0]},{source[1]}")
            ts, ns = self.arguments(*target)
            src_ts, src_ns = move(ts, ns)
            matrix = np.zeros((rows, cols), dtype=np.int64)
            matrix[np.arange(rows), self.index(*source, src_ts, src_ns)] = 1
            self._operators[key] = matrix
        return self._operators[key]

    # --- horizontal (T) operators ---------------------------------------------
    def h_coface(self, p: int, q: int, i: int) -> np.ndarray:
        """∂_h^i: X^{p,q} → X^{p+1,q}, 0 ≤ i ≤ p+1"""
        mp, T = self.pair, self.pair.T

        def move(gs, ns):
            if i == 0:
                return gs[:, :p], act_left_tuples(mp, gs[:, p], ns) if q else ns
            if i == p + 1:
                return gs[:, 1:], ns
            a, b = p - i, p + 1 - i
            merged = T.mul[gs[:, a], gs[:, b]]
            return np.concatenate([gs[:, :a], merged[:, None], gs[:, b + 1:]], axis=1), ns

        return self._pullback(("dh", p, q, i), (p, q), (p + 1, q), move)

    def h_codegeneracy(self, p: int, q: int, j: int) -> np.ndarray:
        """σ_h^j: X^{p,q} → X^{p-1,q}, 0 ≤ j < p; the identity is inserted at T-position p-1-j"""
        slot = p - 1 - j

        def move(ts, ns):
            ones = np.zeros((ts.shape[0], 1), dtype=np.int64)
            return np.concatenate([ts[:, :slot], ones, ts[:, slot:]], axis=1), ns

        return self._pullback(("sh", p, q, j), (p, q), (p - 1, q), move)

    # --- vertical (N) operators -------------------------------------------------
    def v_coface(self, p: int, q: int, j: int) -> np.ndarray:
        """∂_v^j: X^{p,q} → X^{p,q+1}, 0 ≤ j ≤ q+1"""
        mp, N = self.pair, self.pair.N

        def move(ts, ns):
            if j == 0:
                return (act_right_tuples(mp, ts, ns[:, 0]) if p else ts), ns[:, 1:]
            if j == q + 1:
                return ts, ns[:, :q]
            merged = N.mul[ns[:, j - 1], ns[:, j]]
            return ts, np.concatenate([ns[:, :j - 1], merged[:, None], ns[:, j + 1:]], axis=1)

        return self._pullback(("dv", p, q, j), (p, q), (p, q + 1), move)

    def v_codegeneracy(self, p: int, q: int, j: int) -> np.ndarray:
        """σ_v^j: X^{p,q} → X^{p,q-1}, 0 ≤ j < q; the identity is inserted at N-position j"""

        def move(ts, ns):
            ones = np.zeros((ns.shape[0], 1), dtype=np.int64)
            return ts, np.concatenate([ns[:, :j], ones, ns[:, j:]], axis=1)

        return self._pullback(("sv", p, q, j), (p, q), (p, q - 1), move)

    # --- derived structures -------------------------------------------------------
    def row(self, q: int) -> CosimplicialObject:
        """The horizontal cosimplicial object X^{•,q}"""
        return CosimplicialObject(
            modulus=self.modulus,
            dims=[self.dim(p, q) for p in range(self.p_max + 1)],
            cofaces={p: [self.h_coface(p, q, i) for i in range(p + 2)] for p in range(self.p_max)},
            codegeneracies={p: [self.h_codegeneracy(p, q, j) for j in range(p)] for p in range(1, self.p_max + 1)},
            name=f"{self.name} row {q}",
        )

    def column(self, p: int) -> CosimplicialObject:
        """The vertical cosimplicial object X^{p,•}"""
        return CosimplicialObject(
            modulus=self.modulus,
            dims=[self.dim(p, q) for q in range(self.q_max + 1)],
            cofaces={q: [self.v_coface(p, q, j) for j in range(q + 2)] for q in range(self.q_max)},
            codegeneracies={q: [self.v_codegeneracy(p, q, j) for j in range(q)] for q in range(1, self.q_max + 1)},
            name=f"{self.name} column {p}",
        )

    def diag(self, top: Optional[int] = None) -> CosimplicialObject:
        """Diag^n = X^{n,n} with ∂^i = ∂_h^i∂_v^i and σ^j = σ_h^jσ_v^j"""
        top = min(self.p_max, self.q_max) if top is None else top
        cofaces = {
            n: [self.h_coface(n, n + 1, i) @ self.v_coface(n, n, i) for i in range(n + 2)]
            for n in range(top)
        }
        codegeneracies = {
            n: [self.h_codegeneracy(n, n - 1, j) @ self.v_codegeneracy(n, n, j) for j in range(n)]
            for n in range(1, top + 1)
        }
        return CosimplicialObject(self.modulus, [self.dim(n, n) for n in range(top + 1)], cofaces, codegeneracies,
                                  name=f"Diag {self.name}")

    def d_h(self, p: int, q: int) -> np.ndarray:
        """Σ (−1)^i ∂_h^i, which is δ_T on unnormalized cochains"""
        total = sum(((-1) ** i) * self.h_coface(p, q, i) for i in range(p + 2))
        return total % self.modulus

    def d_v(self, p: int, q: int) -> np.ndarray:
        """Σ (−1)^j ∂_v^j, which is δ_N on unnormalized cochains"""
        total = sum(((-1) ** j) * self.v_coface(p, q, j) for j in range(q + 2))
        return total % self.modulus

    def tot_cells(self, n: int, skip_edges: bool = False):
        low = 1 if skip_edges else 0
        return [(p, n - p) for p in range(low, n + 1 - low)]

    def tot_offsets(self, n: int, skip_edges: bool = False) -> Dict[Tuple[int, int], int]:
        offsets, position = {}, 0
        for cell in self.tot_cells(n, skip_edges):
            offsets[cell] = position
            position += self.dim(*cell)
        return offsets

    def tot_dim(self, n: int, skip_edges: bool = False) -> int:
        return sum(self.dim(*cell) for cell in self.tot_cells(n, skip_edges))

    def tot_differential(self, n: int, skip_edges: bool = False) -> np.ndarray:
        """D = d_h + (−1)^p d_v from Tot^n to Tot^{n+1}"""
        source = self.tot_offsets(n, skip_edges)
        target = self.tot_offsets(n + 1, skip_edges)
        for cell in target:
            self._check_cell(*cell)
        D = np.zeros((self.tot_dim(n + 1, skip_edges), self.tot_dim(n, skip_edges)), dtype=np.int64)
        for (p, q), col in source.items():
            width = self.dim(p, q)
            if (p + 1, q) in target:
                row = target[(p + 1, q)]
                D[row:row + self.dim(p + 1, q), col:col + width] += self.d_h(p, q)
            if (p, q + 1) in target:
                row = target[(p, q + 1)]
                D[row:row + self.dim(p, q + 1), col:col + width] += (-1) ** p * self.d_v(p, q)
        return D % self.modulus

    def tot(self, top: Optional[int] = None, skip_edges: bool = False) -> CochainComplex:
        """Tot^0..Tot^top; with ``skip_edges`` only cells with p, q ≥ 1 are used"""
        top = min(self.p_max, self.q_max) if top is None else top
        complex_ = CochainComplex(
            modulus=self.modulus,
            dims=[self.tot_dim(n, skip_edges) for n in range(top + 1)],
            differentials={n: self.tot_differential(n, skip_edges) for n in range(top)},
            name=f"Tot {self.name}" + (" (p, q ≥ 1)" if skip_edges else ""),
        )
        complex_.check()
        return complex_

    # --- validation -----------------------------------------------------------------
    def _require_commute(self, lhs: np.ndarray, rhs: np.ndarray, label: str, witness: Dict) -> None:
        if not np.array_equal(lhs, rhs):
            raise CosimplicialIdentityFailed(f"{label} fails at {witness}", dict(witness, identity=label))

    def check_identities(self) -> None:
        """Cosimplicial identities along every row and column, and commuting horizontal/vertical operators"""
        for q in range(self.q_max + 1):
            self.row(q).check_identities()
        for p in range(self.p_max + 1):
            self.column(p).check_identities()

        for p, q in itertools.product(range(self.p_max + 1), range(self.q_max + 1)):
            witness = {"cell": [p, q]}
            if p < self.p_max and q < self.q_max:
                for i, j in itertools.product(range(p + 2), range(q + 2)):
                    self._require_commute(self.h_coface(p, q + 1, i) @ self.v_coface(p, q, j),
                                          self.v_coface(p + 1, q, j) @ self.h_coface(p, q, i),
                                          "∂_h∂_v = ∂_v∂_h", dict(witness, i=i, j=j))
            if p >= 1 and q >= 1:
                for i, j in itertools.product(range(p), range(q)):
                    self._require_commute(self.h_codegeneracy(p, q - 1, i) @ self.v_codegeneracy(p, q, j),
                                          self.v_codegeneracy(p - 1, q, j) @ self.h_codegeneracy(p, q, i),
                                          "σ_hσ_v = σ_vσ_h", dict(witness, i=i, j=j))
            if p < self.p_max and q >= 1:
                for i, j in itertools.product(range(p + 2), range(q)):
                    self._require_commute(self.h_coface(p, q - 1, i) @ self.v_codegeneracy(p, q, j),
                                          self.v_codegeneracy(p + 1, q, j) @ self.h_coface(p, q, i),
                                          "∂_hσ_v = σ_v∂_h", dict(witness, i=i, j=j))
            if p >= 1 and q < self.q_max:
                for i, j in itertools.product(range(p), range(q + 2)):
                    self._require_commute(self.h_codegeneracy(p, q + 1, i) @ self.v_coface(p, q, j),
                                          self.v_coface(p - 1, q, j) @ self.h_codegeneracy(p, q, i),
                                          "σ_h∂_v = ∂_vσ_h", dict(witness, i=i, j=j))
        logger.debug(f"cosimplicial bicomplex of {self.name} verified up to ({self.p_max}, {self.q_max})")

    def check_against_double_complex(self, double_complex) -> None:
        """The alternating face sums restricted to normalized cochains are the double-complex differentials"""
        m = self.modulus
        P, Q = min(self.p_max, double_complex.p_max), min(self.q_max, double_complex.q_max)
        for p, q in itertools.product(range(P + 1), range(Q + 1)):
            embed_pq = self._normalized_embedding(p, q)
            if q < Q:
                lhs = (self.d_v(p, q) @ embed_pq) % m
                rhs = (self._normalized_embedding(p, q + 1) @ double_complex.delta_N(p, q)) % m
                if not np.array_equal(lhs, rhs):
                    raise CompositionNotZero(f"Σ(−1)^j∂_v^j differs from δ_N at ({p}, {q})", {"cell": [p, q]})
            if p < P:
                lhs = (self.d_h(p, q) @ embed_pq) % m
                rhs = (self._normalized_embedding(p + 1, q) @ double_complex.delta_T(p, q)) % m
                if not np.array_equal(lhs, rhs):
                    raise CompositionNotZero(f"Σ(−1)^i∂_h^i differs from δ_T at ({p}, {q})", {"cell": [p, q]})

    def _normalized_embedding(self, p: int, q: int) -> np.ndarray:
        """Extension by zero of normalized cochains into X^{p,q} (dim(p, q) × normalized dim)"""
        ts, ns = self.arguments(p, q)
        keep = np.all(ts != 0, axis=1) & np.all(ns != 0, axis=1)
        rows = np.nonzero(keep)[0]
        E = np.zeros((self.dim(p, q), rows.size), dtype=np.int64)
        E[rows, np.arange(rows.size)] = 1
        return E


def from_matched_pair(mp: GroupMatchedPair, m: int, bound: int, guard: Optional[SizeGuard] = None,
                      check: bool = True) -> CosimplicialBicomplex:
    """Cosimplicial bicomplex with X^{p,q} for p, q ≤ bound, identities asserted when ``check``"""
    bicomplex = CosimplicialBicomplex(mp, m, bound, bound, guard)
    if check:
        bicomplex.check_identities()
    logger.info(f"Cosimplicial bicomplex of {bicomplex.name} mod {m} up to bound {bound}")
    return bicomplex
