"""Dense exact matrices over the rationals.

Entries are `fractions.Fraction`; every operation is pure and exact. The
matrices here stay small (jet matrices have one row per condition), so a
naive exact row reduction is all that is needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("float entries are not allowed in exact matrices")
    return Fraction(value)


class Matrix:
    """Immutable rectangular matrix of Fractions."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows: Iterable[Sequence]):
        data = tuple(tuple(_frac(v) for v in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("rows of unequal length")
        else:
            width = 0
        self._rows = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i][j]

    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._rows)) if self.rows else Matrix([])

    def stack(self, other: "Matrix") -> "Matrix":
        if self.rows and other.rows and self.cols != other.cols:
            raise ValueError("column mismatch in stack")
        return Matrix(self._rows + other._rows)

    def mul_vector(self, v: Sequence) -> tuple[Fraction, ...]:
        vec = [_frac(x) for x in v]
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(r[j] * vec[j] for j in range(self.cols)) for r in self._rows)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        cols = other.transpose()._rows
        return Matrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return "Matrix(%r)" % [list(map(str, r)) for r in self._rows]

    def rref(self) -> tuple["Matrix", int, tuple[int, ...]]:
        """Reduced row echelon form.

        Returns (reduced matrix, rank, pivot column indices). Exact Gaussian
        elimination with the first nonzero entry of each column as pivot.
        """
        m = [list(r) for r in self._rows]
        pivots: list[int] = []
        lead = 0
        for col in range(self.cols):
            pivot_row = None
            for i in range(lead, self.rows):
                if m[i][col] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[lead], m[pivot_row] = m[pivot_row], m[lead]
            pv = m[lead][col]
            m[lead] = [x / pv for x in m[lead]]
            for i in range(self.rows):
                if i != lead and m[i][col] != 0:
                    factor = m[i][col]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[lead])]
            pivots.append(col)
            lead += 1
            if lead == self.rows:
                break
        return Matrix(m), len(pivots), tuple(pivots)

    def rank(self) -> int:
        return self.rref()[1]

    def kernel_basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """Basis of the right null space, one tuple per free column."""
        reduced, rank, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            for row_idx, pc in enumerate(pivots):
                v[pc] = -reduced.entry(row_idx, fc)
            basis.append(tuple(v))
        return tuple(basis)

    def det(self) -> Fraction:
        """Determinant via exact Gaussian elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = [list(r) for r in self._rows]
        sign = 1
        result = Fraction(1)
        for col in range(n):
            pivot_row = None
            for i in range(col, n):
                if m[i][col] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != col:
                m[col], m[pivot_row] = m[pivot_row], m[col]
                sign = -sign
            pv = m[col][col]
            result *= pv
            for i in range(col + 1, n):
                if m[i][col] != 0:
                    factor = m[i][col] / pv
                    m[i] = [a - factor * b for a, b in zip(m[i], m[col])]
        return sign * result
