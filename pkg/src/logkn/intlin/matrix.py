"""Immutable arbitrary-precision integer matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import chain
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntegerMatrix:
    """A ``rows x cols`` matrix of Python ints stored row-major.

    Zero-sized matrices are allowed in either dimension; they show up as
    boundary maps out of or into empty chain groups.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        entries = tuple(chain.from_iterable(rows))
        if not set(map(type, entries)) <= {int}:
            entries = tuple(int(x) for x in entries)
        return cls(len(rows), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> IntegerMatrix:
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntegerMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols=cols)

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[int]:
        return list(self.entries[j::self.cols]) if self.cols else []

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def diagonal_entries(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    # algebra --------------------------------------------------------------

    @property
    def T(self) -> IntegerMatrix:
        if self.rows == 0:
            return IntegerMatrix.zeros(self.cols, 0)
        return IntegerMatrix.from_rows([list(c) for c in zip(*self.to_rows())], cols=self.rows)

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = other.cols
        brows = [[(j, y) for j, y in enumerate(r) if y] for r in other.to_rows()]
        out = []
        for r in self.to_rows():
            acc = [0] * p
            for k, x in enumerate(r):
                if x:
                    for j, y in brows[k]:
                        acc[j] += x * y
            out.append(acc)
        return IntegerMatrix(self.rows, p, tuple(chain.from_iterable(out)))

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        nz = [(k, x) for k, x in enumerate(vec) if x]
        c = self.cols
        e = self.entries
        return [sum(e[i * c + k] * x for k, x in nz) for i in range(self.rows)]

    def _zip(self, other: IntegerMatrix, op) -> IntegerMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntegerMatrix(
            self.rows, self.cols, tuple(op(a, b) for a, b in zip(self.entries, other.entries))
        )

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def mod(self, n: int) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.cols, tuple(a % n for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def power(self, k: int) -> IntegerMatrix:
        if not self.is_square() or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out = IntegerMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        """Rank over Q."""
        return rational_rank(self.to_rows())

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.det()) == 1

    def inverse(self) -> IntegerMatrix:
        """Inverse of a unimodular matrix; raises ValueError otherwise."""
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.to_rows())]
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c] != 0), None)
            if p is None:
                raise ValueError("singular matrix")
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for i in range(n):
                if i != c and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        inv = [r[n:] for r in a]
        if any(x.denominator != 1 for r in inv for x in r):
            raise ValueError("matrix is not invertible over Z")
        return IntegerMatrix.from_rows([[int(x) for x in r] for r in inv], cols=n)

    def hstack(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        a, b = self.to_rows(), other.to_rows()
        return IntegerMatrix.from_rows([x + y for x, y in zip(a, b)], cols=self.cols + other.cols)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> IntegerMatrix:
        rows, cols = list(rows), list(cols)
        return IntegerMatrix.from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.to_rows()!r})"


def block_diagonal(*blocks: IntegerMatrix) -> IntegerMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return IntegerMatrix.from_rows(out, cols=cols)


def rational_rank(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix given as a list of rows (not mutated)."""
    a = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        pr = a[rank]
        for i in range(rank + 1, len(a)):
            x = a[i][c]
            if x:
                a[i] = [pr[c] * u - x * v for u, v in zip(a[i], pr)]
                g = 0
                for u in a[i]:
                    g = gcd(g, u)
                if g > 1:
                    a[i] = [u // g for u in a[i]]
        rank += 1
    return rank

