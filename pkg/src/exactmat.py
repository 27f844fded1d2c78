"""Exact integer and rational matrix arithmetic.

Everything here works on Python ints and ``fractions.Fraction``; there is no
floating point anywhere in this module. Determinant and rank use fraction-free
(Bareiss) elimination, the integer kernel is read off a Hermite normal form
transformation so it is saturated by construction.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, List, Sequence, Tuple

from sympy.core.intfunc import igcdex

from .errors import DimensionError, DomainError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major integer matrix. Zero rows or zero columns are allowed."""
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise DimensionError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [tuple(int(x) for x in c) for c in columns]
        if rows is None:
            if not columns:
                raise DimensionError("row count needed for a matrix without columns")
            rows = len(columns[0])
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise DimensionError(f"column {j} has {len(c)} entries, expected {rows}")
        return cls(rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns([self.row(i) for i in range(self.rows)], rows=self.cols)

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.columns()
        return IntMatrix.from_rows(
            [[dot(self.row(i), c) for c in cols] for i in range(self.rows)], cols=other.cols)

    def matvec(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} against {self.cols} columns")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "IntMatrix":
        rows, cols = list(rows), list(cols)
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))

    def select_columns(self, cols: Iterable[int]) -> "IntMatrix":
        return self.submatrix(range(self.rows), cols)

    def append_row(self, v: Sequence[int]) -> "IntMatrix":
        if len(v) != self.cols:
            raise DimensionError(f"row of length {len(v)} against {self.cols} columns")
        return IntMatrix(self.rows + 1, self.cols, self.entries + tuple(int(x) for x in v))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True)
class RatVector:
    """Rational vector; Fraction keeps every entry in lowest terms."""
    entries: Tuple[Fraction, ...]

    @classmethod
    def from_ints(cls, v: Sequence[int]) -> "RatVector":
        return cls(tuple(Fraction(x) for x in v))

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: "RatVector") -> "RatVector":
        return RatVector(tuple(a + b for a, b in zip(self.entries, other.entries, strict=True)))

    def __sub__(self, other: "RatVector") -> "RatVector":
        return RatVector(tuple(a - b for a, b in zip(self.entries, other.entries, strict=True)))

    def scale(self, q: Fraction) -> "RatVector":
        return RatVector(tuple(q * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.entries) if x)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def det(M: IntMatrix) -> int:
    if M.rows != M.cols:
        raise DimensionError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(M: IntMatrix) -> int:
    a = M.to_rows()
    r, prev = 0, 1
    for c in range(M.cols):
        pivot = next((i for i in range(r, M.rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        for i in range(r + 1, M.rows):
            aic = a[i][c]
            for j in range(c + 1, M.cols):
                a[i][j] = (p * a[i][j] - aic * a[r][j]) // prev
            a[i][c] = 0
        prev = p
        r += 1
        if r == M.rows:
            break
    return r


def primitive_part(v: Sequence[int]) -> Vector:
    g = gcd(*v) if len(v) else 0
    if g == 0:
        raise DomainError("primitive part of the zero vector")
    return tuple(int(x) // g for x in v)


def _combine(x: int, u: List[int], y: int, w: List[int]) -> List[int]:
    return [x * a + y * b for a, b in zip(u, w)]


def hermite_form(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[List[List[int]], List[List[int]]]:
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular and U*M = H. Nonzero rows of H come first,
    pivots are positive and entries above a pivot are reduced into [0, pivot).
    """
    a = [list(r) for r in rows]
    n = len(a)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    p = 0
    for c in range(ncols):
        if p == n:
            break
        for i in range(p + 1, n):
            b = a[i][c]
            if b == 0:
                continue
            x, y, g = igcdex(a[p][c], b)
            s, t = a[p][c] // g, b // g
            a[p], a[i] = _combine(x, a[p], y, a[i]), _combine(-t, a[p], s, a[i])
            u[p], u[i] = _combine(x, u[p], y, u[i]), _combine(-t, u[p], s, u[i])
        if a[p][c] == 0:
            continue
        if a[p][c] < 0:
            a[p] = [-x for x in a[p]]
            u[p] = [-x for x in u[p]]
        for i in range(p):
            q = a[i][c] // a[p][c]
            if q:
                a[i] = _combine(1, a[i], -q, a[p])
                u[i] = _combine(1, u[i], -q, u[p])
        p += 1
    return a, u


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Z-basis of the saturated integer kernel {v : M v = 0}, one vector per column."""
    n = M.cols
    if n == 0:
        return IntMatrix(0, 0, ())
    H, U = hermite_form(M.transpose().to_rows(), M.rows)
    rk = sum(1 for row in H if any(row))
    kernel_rows = U[rk:]
    if not kernel_rows:
        return IntMatrix(n, 0, ())
    reduced, _ = hermite_form(kernel_rows, n)
    basis = [primitive_part(row) for row in reduced if any(row)]
    logger.debug(f"kernel of {M.rows}x{M.cols} matrix has rank {len(basis)}")
    return IntMatrix.from_columns(basis, rows=n)


def gcd_maximal_minors(M: IntMatrix) -> int:
    """gcd of all cols x cols minors of a tall matrix; 0 iff rank deficient."""
    if M.rows < M.cols:
        raise DimensionError(f"maximal minors need rows >= cols, got {M.rows}x{M.cols}")
    g = 0
    for chosen in combinations(range(M.rows), M.cols):
        g = gcd(g, det(M.submatrix(chosen, range(M.cols))))
        if g == 1:
            break
    return g


def in_row_span(M: IntMatrix, v: Sequence[int]) -> bool:
    return rank(M.append_row(v)) == rank(M)


@dataclass(frozen=True)
class Echelon:
    """Incremental independence test.

    Holds fraction-free echelon rows as (pivot, row) pairs; each row is zero at
    the pivots of the rows before it. ``extend`` returns a new state, so a
    search can keep one per stack frame.
    """
    length: int
    pivots: Tuple[Tuple[int, Vector], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Sequence[int]) -> Vector:
        w = list(v)
        for p, row in self.pivots:
            b = w[p]
            if b:
                a = row[p]
                w = [a * x - b * y for x, y in zip(w, row)]
                g = gcd(*w)
                if g > 1:
                    w = [x // g for x in w]
        return tuple(w)

    def extend(self, v: Sequence[int]) -> "Echelon | None":
        if len(v) != self.length:
            raise DimensionError(f"vector of length {len(v)} in an echelon of length {self.length}")
        w = self.reduce(v)
        lead = next((i for i, x in enumerate(w) if x), None)
        if lead is None:
            return None
        return Echelon(self.length, self.pivots + ((lead, w),))
