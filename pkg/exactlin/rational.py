"""Exact rational matrices for the Lie-algebra side, backed by sympy's DomainMatrix over QQ."""

import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


def to_qq(value):
    fraction = Fraction(value)
    return QQ(fraction.numerator, fraction.denominator)


def to_fraction(element) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))


class RationalMatrix:
    """Immutable rows x cols matrix of exact rationals"""

    def __init__(self, dm: DomainMatrix):
        self._dm = dm.to_dense()

    # --- construction ---------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RationalMatrix":
        rows = [list(row) for row in rows]
        if not rows:
            return cls.zeros(0, cols or 0)
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged rows")
        if width == 0:
            return cls.zeros(len(rows), 0)
        return cls(DomainMatrix([[to_qq(v) for v in row] for row in rows], (len(rows), width), QQ))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(DomainMatrix.zeros((rows, cols), QQ))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(DomainMatrix.eye(n, QQ))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence], rows: int) -> "RationalMatrix":
        columns = [list(c) for c in columns]
        if not columns:
            return cls.zeros(rows, 0)
        return cls.from_rows([[columns[j][i] for j in range(len(columns))] for i in range(rows)])

    # --- basic properties -------------------------------------------------
    @property
    def shape(self):
        return self._dm.shape

    @property
    def rows(self) -> int:
        return self._dm.shape[0]

    @property
    def cols(self) -> int:
        return self._dm.shape[1]

    @property
    def domain_matrix(self) -> DomainMatrix:
        return self._dm

    def to_rows(self) -> List[List[Fraction]]:
        if self.rows == 0 or self.cols == 0:
            return [[] for _ in range(self.rows)]
        return [[to_fraction(v) for v in row] for row in self._dm.to_list()]

    def column(self, j: int) -> List[Fraction]:
        return [row[j] for row in self.to_rows()]

    def columns(self) -> List[List[Fraction]]:
        rows = self.to_rows()
        return [[rows[i][j] for i in range(self.rows)] for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.to_rows() for v in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.to_rows() == other.to_rows()

    def __repr__(self) -> str:
        return f"RationalMatrix({[[str(v) for v in row] for row in self.to_rows()]})"

    # --- arithmetic -------------------------------------------------------
    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return RationalMatrix.zeros(self.rows, other.cols)
        return RationalMatrix(self._dm.matmul(other._dm))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(self._dm + other._dm)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(self._dm - other._dm)

    def scale(self, value) -> "RationalMatrix":
        factor = Fraction(value)
        return RationalMatrix.from_rows([[v * factor for v in row] for row in self.to_rows()], cols=self.cols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self._dm.transpose())

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols == 0:
            return other
        if other.cols == 0:
            return self
        return RationalMatrix(self._dm.hstack(other._dm))

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows == 0:
            return other
        if other.rows == 0:
            return self
        return RationalMatrix(self._dm.vstack(other._dm))

    def select_columns(self, indices: Sequence[int]) -> "RationalMatrix":
        rows = self.to_rows()
        return RationalMatrix.from_rows([[row[j] for j in indices] for row in rows], cols=len(indices))

    # --- elimination --------------------------------------------------------
    def rref(self):
        """(reduced rows as Fractions, pivot columns)"""
        if self.rows == 0 or self.cols == 0:
            return self.to_rows(), ()
        reduced, pivots = self._dm.rref()
        return RationalMatrix(reduced).to_rows(), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "RationalMatrix":
        """Basis of {x : A·x = 0} as columns, one per free variable"""
        reduced, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            vector = [Fraction(0)] * self.cols
            vector[f] = Fraction(1)
            for i, p in enumerate(pivots):
                vector[p] = -reduced[i][f]
            basis.append(vector)
        return RationalMatrix.from_columns(basis, self.cols)

    def solve(self, rhs: Sequence) -> Optional[List[Fraction]]:
        """One solution of A·x = rhs (free variables set to zero), or None"""
        if len(rhs) != self.rows:
            raise ValueError("right-hand side has the wrong length")
        augmented = self.hstack(RationalMatrix.from_rows([[v] for v in rhs], cols=1)) if self.rows else None
        if augmented is None:
            return [Fraction(0)] * self.cols
        reduced, pivots = augmented.rref()
        if self.cols in pivots:
            return None
        solution = [Fraction(0)] * self.cols
        for i, p in enumerate(pivots):
            solution[p] = reduced[i][self.cols]
        return solution

    def solve_many(self, columns: Sequence[Sequence]) -> Optional[List[List[Fraction]]]:
        solutions = []
        for column in columns:
            solution = self.solve(column)
            if solution is None:
                return None
            solutions.append(solution)
        return solutions

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("only square matrices have a determinant")
        if self.rows == 0:
            return Fraction(1)
        return to_fraction(self._dm.det())

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        entries = self.to_rows()
        return RationalMatrix.from_rows([[entries[i][j] for j in cols] for i in rows], cols=len(cols))

    def inverse(self) -> "RationalMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices are invertible")
        n = self.rows
        reduced, pivots = self.hstack(RationalMatrix.identity(n)).rref()
        if tuple(pivots[:n]) != tuple(range(n)):
            raise ValueError("matrix is singular")
        return RationalMatrix.from_rows([row[n:] for row in reduced], cols=n)


def rational_rank(rows: Sequence[Sequence]) -> int:
    return RationalMatrix.from_rows(rows).rank()
