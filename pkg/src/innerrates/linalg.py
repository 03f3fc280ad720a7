"""Exact linear algebra over the rationals.

Everything here is exact: entries are `fractions.Fraction` (arbitrary
precision, always in lowest terms with positive denominator) and elimination
is fraction-free in the style of Bareiss, so intermediate values stay integral
and small.  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RationalMatrix",
    "SingularMatrixError",
    "NotSymmetricError",
    "solve_linear",
    "determinant",
    "is_negative_definite",
]


class SingularMatrixError(ValueError):
    """Raised when a linear solve meets a matrix with determinant zero."""


class NotSymmetricError(ValueError):
    """Raised when an operation requires a symmetric matrix."""


class RationalMatrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[Rational | int]]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged rows")
        self._rows = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Rational:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Rational, ...]:
        return self._rows[i]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        return all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def mul_vector(self, x: Sequence[Rational | int]) -> list[Rational]:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((row[j] * x[j] for j in range(self.cols)), Fraction(0)) for row in self._rows]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._rows)
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"


def _integer_rows(m: RationalMatrix, extra: Sequence[Rational] | None = None):
    """Scale each row (optionally augmented) by a positive integer so all
    entries become ints.  Returns the integer grid and the scale factors."""
    grid: list[list[int]] = []
    scales: list[int] = []
    for i in range(m.rows):
        row = list(m.row(i))
        if extra is not None:
            row.append(extra[i])
        d = lcm(*(x.denominator for x in row)) if row else 1
        grid.append([int(x * d) for x in row])
        scales.append(d)
    return grid, scales


def _bareiss_forward(grid: list[list[int]], n: int, pivoting: bool) -> tuple[int, bool]:
    """Fraction-free forward elimination in place.

    Returns (sign from row swaps, completed).  With pivoting disabled a zero
    pivot aborts early (completed=False); the already-produced pivots
    grid[k][k] equal the leading principal minors up to positive row scaling.
    """
    sign = 1
    prev = 1
    width = len(grid[0])
    for k in range(n):
        if grid[k][k] == 0:
            if not pivoting:
                return sign, False
            swap = next((r for r in range(k + 1, n) if grid[r][k] != 0), None)
            if swap is None:
                return sign, False
            grid[k], grid[swap] = grid[swap], grid[k]
            sign = -sign
        pivot = grid[k][k]
        for i in range(k + 1, n):
            factor = grid[i][k]
            row_i = grid[i]
            row_k = grid[k]
            for j in range(k + 1, width):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign, True


def solve_linear(m: RationalMatrix, b: Sequence[Rational | int]) -> list[Rational]:
    """Solve m·x = b exactly.  Raises SingularMatrixError if det m = 0."""
    if not m.is_square:
        raise ValueError("solve_linear needs a square matrix")
    n = m.rows
    if len(b) != n:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    rhs = [Fraction(x) for x in b]
    grid, _ = _integer_rows(m, rhs)
    _, ok = _bareiss_forward(grid, n, pivoting=True)
    if not ok:
        raise SingularMatrixError("matrix is singular")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(grid[i][n])
        for j in range(i + 1, n):
            acc -= grid[i][j] * x[j]
        x[i] = acc / grid[i][i]
    return x


def determinant(m: RationalMatrix) -> Rational:
    """Exact determinant via fraction-free elimination."""
    if not m.is_square:
        raise ValueError("determinant needs a square matrix")
    grid, scales = _integer_rows(m)
    sign, ok = _bareiss_forward(grid, m.rows, pivoting=True)
    if not ok:
        return Fraction(0)
    det_scaled = grid[m.rows - 1][m.rows - 1]
    denom = 1
    for d in scales:
        denom *= d
    return Fraction(sign * det_scaled, denom)


def is_negative_definite(m: RationalMatrix) -> bool:
    """Leading-principal-minor test: (-1)^k det(M_k) > 0 for k = 1..n.

    Stays exact; no eigenvalues.  Raises NotSymmetricError on asymmetric
    input.
    """
    if not m.is_square:
        raise ValueError("definiteness needs a square matrix")
    if not m.is_symmetric():
        raise NotSymmetricError("matrix is not symmetric")
    # Positive row scaling multiplies every leading minor by a positive
    # number, so the sign test is unaffected.
    grid, _ = _integer_rows(m)
    n = m.rows
    expected_sign = -1
    prev = 1
    width = len(grid[0])
    for k in range(n):
        pivot = grid[k][k]
        if pivot == 0 or (pivot > 0) != (expected_sign > 0):
            return False
        for i in range(k + 1, n):
            factor = grid[i][k]
            row_i = grid[i]
            row_k = grid[k]
            for j in range(k + 1, width):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
        expected_sign = -expected_sign
    return True
