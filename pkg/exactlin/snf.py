"""Smith normal form over the integers with full transformation tracking."""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint

logger = logging.getLogger(__name__)

# Integer matrices are numpy object arrays holding Python ints (arbitrary precision)
IntMatrix = np.ndarray


def as_int_matrix(rows) -> IntMatrix:
    """Copy anything matrix-like into a 2-D object array of Python ints"""
    array = np.array(rows, dtype=object)
    if array.ndim == 1:
        array = array.reshape(1, -1) if array.size else array.reshape(0, 0)
    if array.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {array.shape}")
    out = np.empty(array.shape, dtype=object)
    for idx, value in np.ndenumerate(array):
        out[idx] = int(value)
    return out


def int_identity(n: int) -> IntMatrix:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def int_zeros(rows: int, cols: int) -> IntMatrix:
    out = np.empty((rows, cols), dtype=object)
    out.fill(0)
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """U·M·V = D with D diagonal, d_i | d_{i+1}, and U, V unimodular"""
    left: IntMatrix
    diagonal: IntMatrix
    right: IntMatrix
    left_inverse: IntMatrix
    right_inverse: IntMatrix

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        rows, cols = self.diagonal.shape
        values = [int(self.diagonal[i, i]) for i in range(min(rows, cols))]
        return tuple(v for v in values if v != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


class _SmithWorkspace:
    """Mutable state for one reduction; every elementary operation updates all four transforms"""

    def __init__(self, matrix: IntMatrix):
        self.A = matrix.copy()
        rows, cols = self.A.shape
        self.U = int_identity(rows)
        self.U_inv = int_identity(rows)
        self.V = int_identity(cols)
        self.V_inv = int_identity(cols)

    def swap_rows(self, a: int, b: int) -> None:
        if a == b:
            return
        self.A[[a, b], :] = self.A[[b, a], :]
        self.U[[a, b], :] = self.U[[b, a], :]
        self.U_inv[:, [a, b]] = self.U_inv[:, [b, a]]

    def swap_cols(self, a: int, b: int) -> None:
        if a == b:
            return
        self.A[:, [a, b]] = self.A[:, [b, a]]
        self.V[:, [a, b]] = self.V[:, [b, a]]
        self.V_inv[[a, b], :] = self.V_inv[[b, a], :]

    def add_row(self, target: int, source: int, factor: int) -> None:
        # row_target += factor * row_source
        self.A[target, :] = self.A[target, :] + factor * self.A[source, :]
        self.U[target, :] = self.U[target, :] + factor * self.U[source, :]
        self.U_inv[:, source] = self.U_inv[:, source] - factor * self.U_inv[:, target]

    def add_col(self, target: int, source: int, factor: int) -> None:
        # col_target += factor * col_source
        self.A[:, target] = self.A[:, target] + factor * self.A[:, source]
        self.V[:, target] = self.V[:, target] + factor * self.V[:, source]
        self.V_inv[source, :] = self.V_inv[source, :] - factor * self.V_inv[target, :]

    def negate_row(self, row: int) -> None:
        self.A[row, :] = -self.A[row, :]
        self.U[row, :] = -self.U[row, :]
        self.U_inv[:, row] = -self.U_inv[:, row]

    def pivot_position(self, k: int) -> Optional[Tuple[int, int]]:
        """Smallest |value| among nonzero entries of A[k:, k:], first in row-major order"""
        best = None
        best_abs = None
        rows, cols = self.A.shape
        for i in range(k, rows):
            for j in range(k, cols):
                value = self.A[i, j]
                if value != 0 and (best_abs is None or abs(value) < best_abs):
                    best, best_abs = (i, j), abs(value)
        return best


def smith_decomposition(matrix) -> SmithDecomposition:
    work = _SmithWorkspace(as_int_matrix(matrix))
    A = work.A
    rows, cols = A.shape

    for k in range(min(rows, cols)):
        position = work.pivot_position(k)
        if position is None:
            break
        work.swap_rows(k, position[0])
        work.swap_cols(k, position[1])

        while True:
            pivot = A[k, k]
            clean = True
            for r in range(k + 1, rows):
                if A[r, k] != 0:
                    work.add_row(r, k, -(A[r, k] // pivot))
                    clean = clean and A[r, k] == 0
            for c in range(k + 1, cols):
                if A[k, c] != 0:
                    work.add_col(c, k, -(A[k, c] // pivot))
                    clean = clean and A[k, c] == 0

            if not clean:
                position = work.pivot_position(k)
                work.swap_rows(k, position[0])
                work.swap_cols(k, position[1])
                continue

            offender = None
            for r in range(k + 1, rows):
                for c in range(k + 1, cols):
                    if A[r, c] % pivot != 0:
                        offender = r
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # pull the offending row into row k; the next sweep leaves a smaller remainder
            work.add_row(k, offender, 1)

        if A[k, k] < 0:
            work.negate_row(k)

    logger.debug(f"Smith decomposition of {rows}x{cols} matrix done")
    return SmithDecomposition(
        left=work.U,
        diagonal=work.A,
        right=work.V,
        left_inverse=work.U_inv,
        right_inverse=work.V_inv,
    )


def smith_normal_form(matrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U·M·V = D"""
    decomposition = smith_decomposition(matrix)
    return decomposition.left, decomposition.diagonal, decomposition.right


def invariant_factors_from_orders(orders: Iterable[int]) -> Tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of a direct sum of cyclic groups of the given orders"""
    prime_powers = {}
    for order in orders:
        order = int(order)
        if order <= 1:
            continue
        for prime, exponent in factorint(order).items():
            prime_powers.setdefault(prime, []).append(prime ** exponent)

    if not prime_powers:
        return ()
    for powers in prime_powers.values():
        powers.sort(reverse=True)

    length = max(len(powers) for powers in prime_powers.values())
    factors = []
    for i in range(length):
        value = 1
        for powers in prime_powers.values():
            if i < len(powers):
                value *= powers[i]
        factors.append(value)
    return tuple(reversed(factors))


def format_invariant_factors(factors: Sequence[int]) -> str:
    if not factors:
        return "0"
    return " ⊕ ".join(f"ℤ/{d}" for d in factors)
