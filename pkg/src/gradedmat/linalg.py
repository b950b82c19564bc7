"""Exact Gaussian elimination over cyclotomic scalars.

Vectors are sequences of CycNumber; all routines avoid floating point.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .cyclotomic import CycNumber

Vector = Sequence[CycNumber]


def _first_nonzero(vec: Sequence[CycNumber]) -> Optional[int]:
    for i, x in enumerate(vec):
        if not x.is_zero():
            return i
    return None


class SpanSolver:
    """Incremental row echelon over a list of vectors, tracking coordinates.

    Supports membership tests and exact coordinate recovery in the original
    spanning set.
    """

    def __init__(self, vectors: Sequence[Vector] = ()):  # vectors of equal length
        self._length: Optional[int] = None
        self._count = 0
        # rows: (pivot index, reduced vector, combination over original vectors)
        self._rows: List[Tuple[int, List[CycNumber], List[CycNumber]]] = []
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def echelon_rows(self) -> List[List[CycNumber]]:
        return [list(vec) for _, vec, _ in self._rows]

    def _reduce(self, vector: Vector) -> Tuple[List[CycNumber], List[CycNumber]]:
        if self._length is None:
            self._length = len(vector)
        elif len(vector) != self._length:
            raise ValueError(f"vector length {len(vector)} != {self._length}")
        vec = list(vector)
        combo = [CycNumber.zero()] * self._count
        for pivot, row, row_combo in self._rows:
            factor = vec[pivot]
            if factor.is_zero():
                continue
            for i, x in enumerate(row):
                if not x.is_zero():
                    vec[i] = vec[i] - factor * x
            for i, x in enumerate(row_combo):
                if not x.is_zero():
                    combo[i] = combo[i] - factor * x
        return vec, combo

    def add(self, vector: Vector) -> bool:
        """Insert a vector; returns True when it enlarges the span."""
        vec, combo = self._reduce(vector)
        combo = combo + [CycNumber.zero()] * (self._count + 1 - len(combo))
        combo[self._count] = CycNumber.one()
        self._count += 1
        pivot = _first_nonzero(vec)
        if pivot is None:
            return False
        inv = vec[pivot].inverse()
        vec = [x * inv for x in vec]
        combo = [x * inv for x in combo]
        # insertion order matters: each row is reduced against all earlier rows
        self._rows.append((pivot, vec, combo))
        return True

    def contains(self, vector: Vector) -> bool:
        vec, _ = self._reduce(vector)
        return _first_nonzero(vec) is None

    def coordinates(self, vector: Vector) -> Optional[List[CycNumber]]:
        """Coefficients over the original vector list, or None if outside the span."""
        vec = list(vector)
        coords = [CycNumber.zero()] * self._count
        for pivot, row, row_combo in self._rows:
            factor = vec[pivot]
            if factor.is_zero():
                continue
            for i, x in enumerate(row):
                if not x.is_zero():
                    vec[i] = vec[i] - factor * x
            for i, x in enumerate(row_combo):
                if not x.is_zero():
                    coords[i] = coords[i] + factor * x
        if _first_nonzero(vec) is not None:
            return None
        return coords


def rank_of(vectors: Sequence[Vector]) -> int:
    solver = SpanSolver()
    for v in vectors:
        solver.add(v)
    return solver.rank


def independent_subset(vectors: Sequence[Vector]) -> List[int]:
    """Indices of a maximal independent subset, greedily from the front."""
    solver = SpanSolver()
    out = []
    for i, v in enumerate(vectors):
        if solver.add(v):
            out.append(i)
    return out


def rref(rows: Sequence[Vector]) -> Tuple[List[List[CycNumber]], List[int]]:
    """Reduced row echelon form and pivot columns."""
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(work)) if not work[r][col].is_zero()), None)
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [x * inv for x in work[rank]]
        for r in range(len(work)):
            if r == rank:
                continue
            factor = work[r][col]
            if factor.is_zero():
                continue
            work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def nullspace(rows: Sequence[Vector], ncols: int) -> List[List[CycNumber]]:
    """Basis of the solution space of the homogeneous system rows * x = 0."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    zero, one = CycNumber.zero(), CycNumber.one()
    for free in free_cols:
        vec = [zero] * ncols
        vec[free] = one
        for row, pivot in zip(reduced, pivots):
            vec[pivot] = -row[free]
        basis.append(vec)
    return basis


def solve_linear(rows: Sequence[Vector], rhs: Sequence[CycNumber]) -> Optional[List[CycNumber]]:
    """One exact solution of rows * x = rhs, or None when inconsistent."""
    if len(rows) != len(rhs):
        raise ValueError("rows and right-hand side differ in length")
    if not rows:
        return []
    ncols = len(rows[0])
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    zero = CycNumber.zero()
    solution = [zero] * ncols
    for row, pivot in zip(reduced, pivots):
        if pivot == ncols:
            return None  # pivot in the constant column
        solution[pivot] = row[ncols]
    return solution
