"""Small exact matrices over the rationals.

Everything is immutable and built on fractions.Fraction; no floating point
enters any computation. Matrices act on column vectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, SingularMatrixError


def q(x) -> Fraction:
    """Coerce an int, a Fraction or a string like "3/4" to Fraction.

    Floats are rejected on purpose: they would silently break exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not an exact rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not an exact rational: {x!r}") from exc
    raise InputError(f"not an exact rational: {x!r}")


def qvec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(q(x) for x in xs)


class Mat:
    """Immutable rectangular matrix with exact rational entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        frozen = tuple(tuple(q(x) for x in row) for row in rows)
        if not frozen or not frozen[0]:
            raise InputError("matrix must be nonempty")
        if any(len(r) != len(frozen[0]) for r in frozen):
            raise InputError("matrix rows must all have the same length")
        self.rows = frozen

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def _same_shape(self, other: "Mat") -> None:
        if self.n_rows != other.n_rows or self.n_cols != other.n_cols:
            raise InputError(
                f"shape mismatch: {self.n_rows}x{self.n_cols} vs "
                f"{other.n_rows}x{other.n_cols}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Mat({[[str(x) for x in row] for row in self.rows]})"

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(tuple(a + b for a, b in zip(ra, rb))
                   for ra, rb in zip(self.rows, other.rows))

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(tuple(a - b for a, b in zip(ra, rb))
                   for ra, rb in zip(self.rows, other.rows))

    def __neg__(self) -> "Mat":
        return Mat(tuple(-a for a in row) for row in self.rows)

    def __rmul__(self, k) -> "Mat":
        k = q(k)
        return Mat(tuple(k * a for a in row) for row in self.rows)

    def __mul__(self, other: "Mat") -> "Mat":
        if self.n_cols != other.n_rows:
            raise InputError(
                f"cannot multiply {self.n_rows}x{self.n_cols} by "
                f"{other.n_rows}x{other.n_cols}")
        cols = other.transpose().rows
        return Mat(tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                   for row in self.rows)

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        v = qvec(vec)
        if len(v) != self.n_cols:
            raise InputError(f"vector has length {len(v)}, expected {self.n_cols}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def transpose(self) -> "Mat":
        return Mat(zip(*self.rows))

    def det(self) -> Fraction:
        if self.n_rows != self.n_cols:
            raise InputError("determinant of a non-square matrix")
        work = [list(row) for row in self.rows]
        n = self.n_rows
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            det *= work[col][col]
            inv = 1 / work[col][col]
            for r in range(col + 1, n):
                factor = work[r][col] * inv
                if factor:
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return det

    def inverse(self) -> "Mat":
        if self.n_rows != self.n_cols:
            raise InputError("inverse of a non-square matrix")
        n = self.n_rows
        work = [list(row) + [Fraction(int(i == j)) for j in range(n)]
                for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv = 1 / work[col][col]
            work[col] = [a * inv for a in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    factor = work[r][col]
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return Mat(row[n:] for row in work)


def render_matrix(m: Mat) -> str:
    """Aligned text grid, one bracketed line per row."""
    cells = [[str(x) for x in row] for row in m.rows]
    widths = [max(len(cells[i][j]) for i in range(len(cells)))
              for j in range(len(cells[0]))]
    return "\n".join(
        "[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]"
        for row in cells)


# JSON encoding of exact numbers: integers stay integers, everything else
# becomes an "n/d" string so nothing is ever rounded.

def enc_q(x: Fraction):
    x = q(x)
    return int(x) if x.denominator == 1 else str(x)


def dec_q(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"not an encoded rational: {v!r}")
    return q(v)


def enc_qseq(xs) -> list:
    return [enc_q(x) for x in xs]


def dec_qseq(xs) -> tuple[Fraction, ...]:
    return tuple(dec_q(x) for x in xs)


def enc_mat(m: Mat) -> list[list]:
    return [enc_qseq(row) for row in m.rows]


def dec_mat(rows) -> Mat:
    return Mat(dec_qseq(row) for row in rows)
