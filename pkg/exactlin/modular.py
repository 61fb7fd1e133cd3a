"""Linear algebra over ℤ/m: diagonalization with tracked transforms, kernels, solving, submodule orders."""

import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)

# int64 products of two residues must not overflow after summing a few million terms
MAX_MODULUS = 2 ** 20


def mod_m(A, m: int) -> np.ndarray:
    return np.asarray(np.asarray(A, dtype=np.int64) % m, dtype=np.int64)


def as_mod_matrix(A, m: int, rows: Optional[int] = None) -> np.ndarray:
    """2-D int64 array reduced mod m; a 1-D input becomes a single column"""
    array = np.asarray(A, dtype=np.int64)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {array.shape}")
    if rows is not None and array.shape[0] != rows:
        raise ValueError(f"expected {rows} rows, got {array.shape[0]}")
    return array % m


def _extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """(h, s, t) with s*a + t*b = h = gcd(a, b)"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def unit_for_divisor(value: int, m: int) -> Tuple[int, int]:
    """Return (g, u) with g = gcd(value, m), u a unit mod m and value*u ≡ g (mod m)"""
    value %= m
    g = gcd(value, m)
    if value == 0:
        return m, 1
    m_reduced = m // g
    u = pow(value // g, -1, m_reduced) if m_reduced > 1 else 1
    while gcd(u, m) != 1:
        u += m_reduced
    return g, u % m


@dataclass(frozen=True)
class ModularDiagonalization:
    """left·A·right ≡ diag(diagonal) (mod m); diagonal entries are divisors of m, zeros past the rank"""
    modulus: int
    diagonal: np.ndarray
    rank: int
    shape: Tuple[int, int]
    left: Optional[np.ndarray]
    left_inverse: Optional[np.ndarray]
    right: Optional[np.ndarray]
    right_inverse: Optional[np.ndarray]
    rhs: Optional[np.ndarray]

    def column_orders(self) -> np.ndarray:
        """gcd(d_j, m) per column: the order of the solution set of d_j·y ≡ 0"""
        cols = self.shape[1]
        orders = np.full(cols, self.modulus, dtype=np.int64)
        orders[:self.rank] = self.diagonal[:self.rank]
        return orders

    def image_orders(self) -> List[int]:
        """Orders of the cyclic summands of the column space"""
        return [self.modulus // int(d) for d in self.diagonal[:self.rank] if self.modulus // int(d) > 1]


class _ModularWorkspace:
    def __init__(self, A: np.ndarray, m: int, track_left: bool, track_right: bool, rhs: Optional[np.ndarray]):
        self.m = m
        self.A = A
        rows, cols = A.shape
        self.U = np.eye(rows, dtype=np.int64) if track_left else None
        self.U_inv = np.eye(rows, dtype=np.int64) if track_left else None
        self.V = np.eye(cols, dtype=np.int64) if track_right else None
        self.V_inv = np.eye(cols, dtype=np.int64) if track_right else None
        self.rhs = rhs

    # --- row operations -------------------------------------------------
    def swap_rows(self, a: int, b: int) -> None:
        if a == b:
            return
        self.A[[a, b], :] = self.A[[b, a], :]
        if self.U is not None:
            self.U[[a, b], :] = self.U[[b, a], :]
            self.U_inv[:, [a, b]] = self.U_inv[:, [b, a]]
        if self.rhs is not None:
            self.rhs[[a, b], :] = self.rhs[[b, a], :]

    def scale_row(self, row: int, unit: int) -> None:
        m = self.m
        self.A[row, :] = (self.A[row, :] * unit) % m
        if self.U is not None:
            self.U[row, :] = (self.U[row, :] * unit) % m
            self.U_inv[:, row] = (self.U_inv[:, row] * pow(unit, -1, m)) % m
        if self.rhs is not None:
            self.rhs[row, :] = (self.rhs[row, :] * unit) % m

    def combine_rows(self, k: int, r: int) -> None:
        """Replace rows k, r by a unimodular combination leaving gcd(A[k,k], A[r,k]) at (k,k) and 0 at (r,k)"""
        m = self.m
        g, b = int(self.A[k, k]), int(self.A[r, k])
        h, s, t = _extended_gcd(g, b)
        a11, a12, a21, a22 = s % m, t % m, (-(b // h)) % m, (g // h) % m
        # inverse of [[s, t], [-b/h, g/h]] is [[g/h, -t], [b/h, s]]
        i11, i12, i21, i22 = (g // h) % m, (-t) % m, (b // h) % m, s % m

        def mix(M):
            row_k, row_r = M[k, :].copy(), M[r, :].copy()
            M[k, :] = (a11 * row_k + a12 * row_r) % m
            M[r, :] = (a21 * row_k + a22 * row_r) % m

        mix(self.A)
        if self.U is not None:
            mix(self.U)
            col_k, col_r = self.U_inv[:, k].copy(), self.U_inv[:, r].copy()
            self.U_inv[:, k] = (col_k * i11 + col_r * i21) % m
            self.U_inv[:, r] = (col_k * i12 + col_r * i22) % m
        if self.rhs is not None:
            mix(self.rhs)

    def eliminate_below(self, k: int) -> None:
        m = self.m
        column = self.A[k + 1:, k]
        nz = np.nonzero(column)[0]
        if nz.size == 0:
            return
        rows = nz + k + 1
        q = self.A[rows, k] // self.A[k, k]
        self.A[rows, :] = (self.A[rows, :] - np.outer(q, self.A[k, :])) % m
        if self.U is not None:
            self.U[rows, :] = (self.U[rows, :] - np.outer(q, self.U[k, :])) % m
            self.U_inv[:, k] = (self.U_inv[:, k] + self.U_inv[:, rows] @ q) % m
        if self.rhs is not None:
            self.rhs[rows, :] = (self.rhs[rows, :] - np.outer(q, self.rhs[k, :])) % m

    # --- column operations ----------------------------------------------
    def swap_cols(self, a: int, b: int) -> None:
        if a == b:
            return
        self.A[:, [a, b]] = self.A[:, [b, a]]
        if self.V is not None:
            self.V[:, [a, b]] = self.V[:, [b, a]]
            self.V_inv[[a, b], :] = self.V_inv[[b, a], :]

    def combine_cols(self, k: int, c: int) -> None:
        m = self.m
        g, b = int(self.A[k, k]), int(self.A[k, c])
        h, s, t = _extended_gcd(g, b)
        f11, f21, f12, f22 = s % m, t % m, (-(b // h)) % m, (g // h) % m

        def mix(M):
            col_k, col_c = M[:, k].copy(), M[:, c].copy()
            M[:, k] = (col_k * f11 + col_c * f21) % m
            M[:, c] = (col_k * f12 + col_c * f22) % m

        mix(self.A)
        if self.V is not None:
            mix(self.V)
            row_k, row_c = self.V_inv[k, :].copy(), self.V_inv[c, :].copy()
            self.V_inv[k, :] = ((g // h) * row_k + (b // h) * row_c) % m
            self.V_inv[c, :] = ((-t) * row_k + s * row_c) % m

    def eliminate_right(self, k: int) -> None:
        m = self.m
        row = self.A[k, k + 1:]
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            return
        cols = nz + k + 1
        q = self.A[k, cols] // self.A[k, k]
        # column k is zero below and above the pivot, so only row k changes
        self.A[k, cols] = 0
        if self.V is not None:
            self.V[:, cols] = (self.V[:, cols] - np.outer(self.V[:, k], q)) % m
            self.V_inv[k, :] = (self.V_inv[k, :] + q @ self.V_inv[cols, :]) % m

    def pivot_position(self, k: int) -> Optional[Tuple[int, int]]:
        """Entry of A[k:, k:] with the smallest gcd against m, first in row-major order"""
        sub = self.A[k:, k:]
        if sub.size == 0:
            return None
        g = np.gcd(sub, self.m)
        flat = int(np.argmin(g))
        if g.flat[flat] >= self.m:
            return None
        i, j = divmod(flat, sub.shape[1])
        return i + k, j + k


def diagonalize_mod(A, m: int, track_left: bool = False, track_right: bool = True,
                    rhs=None) -> ModularDiagonalization:
    """Diagonalize A over ℤ/m by unimodular row and column operations.

    Row operations are also applied to ``rhs`` when given, which is how single
    systems are solved without materializing the left transform.
    """
    if m < 2 or m > MAX_MODULUS:
        raise ValueError(f"modulus {m} outside the supported range 2..{MAX_MODULUS}")
    work_matrix = as_mod_matrix(A, m).copy()
    rows, cols = work_matrix.shape
    rhs_matrix = None
    if rhs is not None:
        rhs_matrix = as_mod_matrix(rhs, m, rows=rows).copy()
    work = _ModularWorkspace(work_matrix, m, track_left, track_right, rhs_matrix)
    A = work.A

    rank = 0
    for k in range(min(rows, cols)):
        position = work.pivot_position(k)
        if position is None:
            break
        work.swap_rows(k, position[0])
        work.swap_cols(k, position[1])

        while True:
            g, unit = unit_for_divisor(int(A[k, k]), m)
            if unit != 1:
                work.scale_row(k, unit)
            column = A[k + 1:, k]
            bad_rows = np.nonzero(column % g)[0]
            if bad_rows.size:
                work.combine_rows(k, int(bad_rows[0]) + k + 1)
                continue
            work.eliminate_below(k)
            row = A[k, k + 1:]
            bad_cols = np.nonzero(row % g)[0]
            if bad_cols.size:
                work.combine_cols(k, int(bad_cols[0]) + k + 1)
                continue
            work.eliminate_right(k)
            break
        rank = k + 1

    diagonal = np.zeros(min(rows, cols), dtype=np.int64)
    for i in range(rank):
        diagonal[i] = A[i, i]
    logger.debug(f"Diagonalized {rows}x{cols} matrix mod {m}: rank {rank}")
    return ModularDiagonalization(
        modulus=m,
        diagonal=diagonal,
        rank=rank,
        shape=(rows, cols),
        left=work.U,
        left_inverse=work.U_inv,
        right=work.V,
        right_inverse=work.V_inv,
        rhs=work.rhs,
    )


def _back_substitute(diag: ModularDiagonalization, transformed: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Solve D·y = c column-wise; returns (x = V·y, solvable mask)"""
    m = diag.modulus
    rows, cols = diag.shape
    c = transformed % m
    count = c.shape[1]
    y = np.zeros((cols, count), dtype=np.int64)
    solvable = np.ones(count, dtype=bool)
    for i in range(diag.rank):
        d = int(diag.diagonal[i])
        divisible = c[i, :] % d == 0
        solvable &= divisible
        # smallest nonnegative representative keeps the solution deterministic
        y[i, :] = np.where(divisible, (c[i, :] // d) % (m // d), 0)
    if diag.rank < rows:
        solvable &= np.all(c[diag.rank:, :] == 0, axis=0)
    x = (diag.right @ y) % m
    return x, solvable


def solve_mod(A, b, m: int) -> Optional[np.ndarray]:
    """A solution x of A·x ≡ b (mod m), or None when there is none"""
    A = as_mod_matrix(A, m)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if A.shape[1] == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(b % m) else None
    diag = diagonalize_mod(A, m, rhs=b.reshape(-1, 1))
    x, solvable = _back_substitute(diag, diag.rhs)
    if not solvable[0]:
        return None
    return x[:, 0]


def solve_mod_many(A, B, m: int) -> Tuple[np.ndarray, np.ndarray]:
    """Solve A·X ≡ B column by column: returns (X, solvable mask)"""
    A = as_mod_matrix(A, m)
    B = as_mod_matrix(B, m, rows=A.shape[0])
    if A.shape[1] == 0:
        return np.zeros((0, B.shape[1]), dtype=np.int64), ~np.any(B, axis=0)
    diag = diagonalize_mod(A, m, rhs=B)
    return _back_substitute(diag, diag.rhs)


class ModularSolver:
    """Reusable solver for repeated right-hand sides against a fixed matrix"""

    def __init__(self, A, m: int):
        self.modulus = m
        self.matrix = as_mod_matrix(A, m)
        self.diagonalization = diagonalize_mod(self.matrix, m, track_left=True) if self.matrix.shape[1] else None

    def solve_many(self, B) -> Tuple[np.ndarray, np.ndarray]:
        m = self.modulus
        B = as_mod_matrix(B, m, rows=self.matrix.shape[0])
        if self.diagonalization is None:
            return np.zeros((0, B.shape[1]), dtype=np.int64), ~np.any(B, axis=0)
        transformed = (self.diagonalization.left @ B) % m
        return _back_substitute(self.diagonalization, transformed)

    def solve(self, b) -> Optional[np.ndarray]:
        x, solvable = self.solve_many(np.asarray(b, dtype=np.int64).reshape(-1, 1))
        return x[:, 0] if solvable[0] else None

    def contains(self, B) -> bool:
        _, solvable = self.solve_many(B)
        return bool(np.all(solvable))


def kernel_from_diagonalization(diag: ModularDiagonalization) -> Tuple[np.ndarray, np.ndarray]:
    """(generators as columns, their additive orders) of the kernel"""
    m = diag.modulus
    orders = diag.column_orders()
    keep = np.nonzero(orders > 1)[0]
    scales = m // orders[keep]
    generators = (diag.right[:, keep] * scales) % m
    return generators.astype(np.int64), orders[keep]


def kernel_mod(A, m: int) -> np.ndarray:
    """Generators (columns) of {x : A·x ≡ 0 (mod m)}"""
    A = as_mod_matrix(A, m)
    if A.shape[1] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    generators, _ = kernel_from_diagonalization(diagonalize_mod(A, m))
    return generators


def submodule_orders(P, m: int) -> List[int]:
    """Cyclic decomposition orders of the column span of P in (ℤ/m)^n"""
    P = as_mod_matrix(P, m)
    if P.size == 0:
        return []
    return diagonalize_mod(P, m, track_right=False).image_orders()


def submodule_order(P, m: int) -> int:
    order = 1
    for value in submodule_orders(P, m):
        order *= value
    return order


def span_contains(P, Q, m: int) -> bool:
    """Whether every column of Q lies in the column span of P"""
    P = as_mod_matrix(P, m)
    Q = as_mod_matrix(Q, m, rows=P.shape[0])
    if Q.shape[1] == 0:
        return True
    _, solvable = solve_mod_many(P, Q, m)
    return bool(np.all(solvable))


def spans_equal(P, Q, m: int) -> bool:
    return span_contains(P, Q, m) and span_contains(Q, P, m)
