"""Dense square matrices over exact cyclotomic scalars."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from .cyclotomic import CycNumber

Scalar = Union[CycNumber, int, Fraction]


def _coerce(value: Scalar) -> CycNumber:
    if isinstance(value, CycNumber):
        return value
    return CycNumber.rational(value)


class Matrix:
    """Immutable n x n matrix; all arithmetic is exact."""

    __slots__ = ("n", "entries")

    def __init__(self, entries: Iterable[Iterable[Scalar]]):
        rows = tuple(tuple(_coerce(x) for x in row) for row in entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("matrix must be square and non-empty")
        self.n = n
        self.entries = rows

    @staticmethod
    def zeros(n: int) -> "Matrix":
        zero = CycNumber.zero()
        return Matrix([[zero] * n for _ in range(n)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        zero, one = CycNumber.zero(), CycNumber.one()
        return Matrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def unit(n: int, i: int, j: int) -> "Matrix":
        """The matrix unit E_ij (zero-based indices)."""
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"unit index ({i},{j}) out of range for n={n}")
        zero, one = CycNumber.zero(), CycNumber.one()
        return Matrix([[one if (r, c) == (i, j) else zero for c in range(n)] for r in range(n)])

    @staticmethod
    def diagonal(values: Sequence[Scalar]) -> "Matrix":
        n = len(values)
        zero = CycNumber.zero()
        return Matrix([[_coerce(values[i]) if i == j else zero for j in range(n)] for i in range(n)])

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        n = self.n
        zero = CycNumber.zero()
        rows: List[List[CycNumber]] = [[zero] * n for _ in range(n)]
        for i in range(n):
            row = self.entries[i]
            out = rows[i]
            for k in range(n):
                a = row[k]
                if a.is_zero():
                    continue
                other_row = other.entries[k]
                for j in range(n):
                    b = other_row[j]
                    if not b.is_zero():
                        out[j] = out[j] + a * b
        return Matrix(rows)

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Matrix":
        c = _coerce(c)
        return Matrix([[c * a for a in row] for row in self.entries])

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; block (i,j) equals self[i][j] * other."""
        n, m = self.n, other.n
        rows = []
        for i in range(n):
            for r in range(m):
                rows.append([self.entries[i][j] * other.entries[r][c]
                             for j in range(n) for c in range(m)])
        return Matrix(rows)

    def transpose(self) -> "Matrix":
        return Matrix([[self.entries[j][i] for j in range(self.n)] for i in range(self.n)])

    def inverse(self) -> "Matrix":
        """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
        n = self.n
        work = [list(row) for row in self.entries]
        zero, one = CycNumber.zero(), CycNumber.one()
        aug = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = work[col][col].inverse()
            work[col] = [x * inv for x in work[col]]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r == col:
                    continue
                factor = work[r][col]
                if factor.is_zero():
                    continue
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
        return Matrix(aug)

    def trace(self) -> CycNumber:
        total = CycNumber.zero()
        for i in range(self.n):
            total = total + self.entries[i][i]
        return total

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.entries for a in row)

    def nonzero_positions(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.n) for j in range(self.n)
                     if not self.entries[i][j].is_zero())

    def flatten(self) -> Tuple[CycNumber, ...]:
        return tuple(a for row in self.entries for a in row)

    def column(self, j: int) -> Tuple[CycNumber, ...]:
        return tuple(self.entries[i][j] for i in range(self.n))

    def apply(self, vector: Sequence[CycNumber]) -> Tuple[CycNumber, ...]:
        if len(vector) != self.n:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.n):
            total = CycNumber.zero()
            for j, a in enumerate(self.entries[i]):
                if not a.is_zero() and not vector[j].is_zero():
                    total = total + a * vector[j]
            out.append(total)
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.n != other.n:
            return False
        return all(a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(a.to_string() for a in row) for row in self.entries)
        return f"Matrix[{rows}]"
