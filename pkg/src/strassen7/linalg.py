"""Exact small linear algebra: 2x2 matrices, 2-vectors, and a generic
Gaussian solver for the 2x2 and 4x4 systems used by the derivation.

Entry order is row-major (a11, a12, a21, a22) everywhere, including when
matrices are flattened into solver columns or files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import Field, FieldElement, FieldMismatchError


class SingularMatrixError(ArithmeticError):
    """The matrix has determinant zero and cannot be inverted."""


class SingularSystemError(ArithmeticError):
    """The linear system has no unique solution."""


def _require_same_field(a: Field, b: Field) -> None:
    if a != b:
        raise FieldMismatchError(f"mixed fields: {a.name} and {b.name}")


class Mat2:
    """A 2x2 matrix over one field, stored row-major."""

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries: Iterable):
        self.field = field
        coerced = tuple(field(e) for e in entries)
        if len(coerced) != 4:
            raise ValueError("Mat2 needs exactly 4 entries (a11, a12, a21, a22)")
        self.entries = coerced

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Mat2":
        return cls(field, [rows[0][0], rows[0][1], rows[1][0], rows[1][1]])

    @classmethod
    def identity(cls, field: Field) -> "Mat2":
        return cls(field, [1, 0, 0, 1])

    @classmethod
    def zero(cls, field: Field) -> "Mat2":
        return cls(field, [0, 0, 0, 0])

    def __add__(self, other: "Mat2") -> "Mat2":
        _require_same_field(self.field, other.field)
        return Mat2(self.field, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat2") -> "Mat2":
        _require_same_field(self.field, other.field)
        return Mat2(self.field, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Mat2":
        return Mat2(self.field, [-a for a in self.entries])

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            _require_same_field(self.field, other.field)
            a11, a12, a21, a22 = self.entries
            b11, b12, b21, b22 = other.entries
            return Mat2(
                self.field,
                [
                    a11 * b11 + a12 * b21,
                    a11 * b12 + a12 * b22,
                    a21 * b11 + a22 * b21,
                    a21 * b12 + a22 * b22,
                ],
            )
        if isinstance(other, ColVec2):
            _require_same_field(self.field, other.field)
            a11, a12, a21, a22 = self.entries
            return ColVec2(self.field, [a11 * other.x + a12 * other.y,
                                        a21 * other.x + a22 * other.y])
        return NotImplemented

    def scale(self, c) -> "Mat2":
        c = self.field(c)
        return Mat2(self.field, [c * a for a in self.entries])

    def __mul__(self, c):
        if isinstance(c, (FieldElement, int)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def trace(self) -> FieldElement:
        return self.entries[0] + self.entries[3]

    def det(self) -> FieldElement:
        a11, a12, a21, a22 = self.entries
        return a11 * a22 - a12 * a21

    def inverse(self) -> "Mat2":
        """Adjugate inverse; the product with the input is re-checked."""
        d = self.det()
        if not d:
            raise SingularMatrixError("matrix has determinant zero")
        a11, a12, a21, a22 = self.entries
        dinv = d.inv()
        result = Mat2(self.field, [a22 * dinv, -a12 * dinv, -a21 * dinv, a11 * dinv])
        if self.field.exact and self @ result != Mat2.identity(self.field):
            raise SingularMatrixError("inverse self-check failed")
        return result

    def conjugate_by(self, p: "Mat2") -> "Mat2":
        """P^-1 * self * P; raises SingularMatrixError for singular P."""
        return p.inverse() @ self @ p

    def is_scalar(self) -> bool:
        """True iff the matrix is a scalar multiple of the identity."""
        a11, a12, a21, a22 = self.entries
        return not a12 and not a21 and a11 == a22

    def flatten(self) -> tuple:
        return self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.field == other.field and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.field, self.entries))

    def __repr__(self) -> str:
        a11, a12, a21, a22 = self.entries
        return f"[[{a11}, {a12}], [{a21}, {a22}]]"


class ColVec2:
    """A column 2-vector."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field: Field, entries: Iterable):
        self.field = field
        self.x, self.y = (field(e) for e in entries)

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def __add__(self, other: "ColVec2") -> "ColVec2":
        _require_same_field(self.field, other.field)
        return ColVec2(self.field, [self.x + other.x, self.y + other.y])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColVec2):
            return NotImplemented
        return self.field == other.field and (self.x, self.y) == (other.x, other.y)

    def __hash__(self) -> int:
        return hash((self.field, self.x, self.y))

    def __repr__(self) -> str:
        return f"({self.x}, {self.y})"


class RowVec2:
    """A row 2-vector; multiplies matrices and column vectors from the left."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field: Field, entries: Iterable):
        self.field = field
        self.x, self.y = (field(e) for e in entries)

    def __matmul__(self, other):
        if isinstance(other, ColVec2):
            _require_same_field(self.field, other.field)
            return self.x * other.x + self.y * other.y
        if isinstance(other, Mat2):
            _require_same_field(self.field, other.field)
            a11, a12, a21, a22 = other.entries
            return RowVec2(self.field, [self.x * a11 + self.y * a21,
                                        self.x * a12 + self.y * a22])
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, RowVec2):
            return NotImplemented
        return self.field == other.field and (self.x, self.y) == (other.x, other.y)

    def __hash__(self) -> int:
        return hash((self.field, self.x, self.y))

    def __repr__(self) -> str:
        return f"({self.x}, {self.y})"


def outer(u: ColVec2, v: RowVec2) -> Mat2:
    """Outer product u * v of a column and a row vector."""
    _require_same_field(u.field, v.field)
    return Mat2(u.field, [u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y])


@dataclass(frozen=True)
class SquareSystem:
    """An n x n linear system A x = b over one field."""

    matrix: tuple
    rhs: tuple

    @classmethod
    def build(cls, field: Field, matrix: Sequence[Sequence], rhs: Sequence) -> "SquareSystem":
        n = len(rhs)
        rows = tuple(tuple(field(e) for e in row) for row in matrix)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError("coefficient matrix shape inconsistent with rhs")
        return cls(rows, tuple(field(e) for e in rhs))


def solve(system: SquareSystem) -> list:
    """Exact Gaussian elimination with first-nonzero-pivot search.

    Returns the unique solution or raises SingularSystemError.  No magnitude
    pivoting: arithmetic is exact and column-order pivots keep elimination
    deterministic across backends.
    """
    n = len(system.rhs)
    a = [list(row) for row in system.matrix]
    b = list(system.rhs)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col]), None)
        if pivot_row is None:
            raise SingularSystemError(f"no pivot in column {col}")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            b[col], b[pivot_row] = b[pivot_row], b[col]
        pivot = a[col][col]
        for r in range(col + 1, n):
            if not a[r][col]:
                continue
            factor = a[r][col] / pivot
            for c in range(col, n):
                a[r][c] = a[r][c] - factor * a[col][c]
            b[r] = b[r] - factor * b[col]
    x = [None] * n
    for r in range(n - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, n):
            acc = acc - a[r][c] * x[c]
        x[r] = acc / a[r][r]
    return x


def vectors_rank(vectors: Sequence[Sequence[FieldElement]]) -> int:
    """Rank of a list of equal-length coordinate vectors, by elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        pivot_row = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if not rows[r][col]:
                continue
            factor = rows[r][col] / pivot
            for c in range(col, width):
                rows[r][c] = rows[r][c] - factor * rows[rank][c]
        rank += 1
        if rank == len(rows):
            break
    return rank


def independent(matrices: Sequence[Mat2]) -> bool:
    """True iff the matrices are linearly independent (as flattened vectors)."""
    return vectors_rank([m.flatten() for m in matrices]) == len(matrices)
