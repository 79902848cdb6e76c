"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a positive
denominator).  :class:`RatMatrix` is an immutable row-major matrix of them.
Rank and determinant use fraction-free (Bareiss) elimination on an integer
rescaling of the input; the reduced row-echelon form is computed with ordinary
Gauss-Jordan steps since its output is rational anyway.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import ClassTwoError, DimensionMismatch, NonSquare

Rational = Fraction

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``-3/7``, ``+2`` or ``12``.  Decimals and zero denominators are rejected."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ClassTwoError(f"not a rational number: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ClassTwoError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(q) -> str:
    return str(Fraction(q))


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class RatMatrix:
    """Immutable dense matrix with :class:`Fraction` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(as_rational(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def column(cls, values: Sequence) -> "RatMatrix":
        return cls(len(values), 1, values)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "RatMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise DimensionMismatch("row count needed for an empty column list")
            rows = len(columns[0])
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns)) \
            if columns else cls(rows, 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def scalar(cls, n: int, c) -> "RatMatrix":
        return cls(n, n, [c if i == j else 0 for i in range(n) for j in range(n)])

    # access

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # value semantics

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RatMatrix({self.rows}, {self.cols}, {[str(e) for e in self.entries]})"

    def __str__(self):
        return "\n".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))

    # arithmetic

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return RatMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product, returning a tuple."""
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(sum((a * b for a, b in zip(self.row(i), vec) if a and b), Fraction(0))
                     for i in range(self.rows))

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols)
                                                for i in range(self.rows)])

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix(len(row_idx), len(col_idx),
                         [self[i, j] for i in row_idx for j in col_idx])

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        return RatMatrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)],
                                   cols=self.cols + other.cols)

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack needs equal column counts")
        return RatMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def bilinear(self, u: Sequence, v: Sequence) -> Fraction:
        """``u^T M v``."""
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui:
                r = self.row(i)
                total += ui * sum((a * b for a, b in zip(r, v) if a and b), Fraction(0))
        return total


def _integer_rows(m: RatMatrix):
    """Rows rescaled to integers; returns (rows, product of the scale factors)."""
    rows, scale = [], 1
    for i in range(m.rows):
        r = m.row(i)
        d = lcm(*(e.denominator for e in r)) if r else 1
        rows.append([int(e * d) for e in r])
        scale *= d
    return rows, scale


def _bareiss(a, ncols):
    """Fraction-free echelon elimination in place; returns (pivot count, sign, last pivot)."""
    nrows = len(a)
    prev, sign, r = 1, 1, 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                q, rem = divmod(row_i[j] * piv - aic * row_r[j], prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
            row_i[c] = 0
        prev = piv
        r += 1
    return r, sign, prev


def rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    rows, _ = _integer_rows(m)
    return _bareiss(rows, m.cols)[0]


def det(m: RatMatrix) -> Fraction:
    if not m.is_square():
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    rows, scale = _integer_rows(m)
    r, sign, last = _bareiss(rows, n)
    if r < n:
        return Fraction(0)
    return Fraction(sign * last, scale)


def rref(m: RatMatrix):
    """Reduced row-echelon form and the list of pivot columns."""
    a = m.to_rows()
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return RatMatrix.from_rows(a, cols=m.cols) if m.rows else m, pivots


def kernel(m: RatMatrix) -> RatMatrix:
    """Basis of the null space, one vector per column (``cols x nullity``)."""
    red, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        basis.append(v)
    return RatMatrix.from_columns(basis, rows=m.cols)


def solve(m: RatMatrix, rhs: RatMatrix) -> Optional[RatMatrix]:
    """One exact solution ``x`` of ``m @ x == rhs``, or ``None`` when inconsistent.

    Free variables are set to zero.
    """
    if m.rows != rhs.rows:
        raise DimensionMismatch(f"{m.rows} equations but rhs has {rhs.rows} rows")
    red, pivots = rref(m.hstack(rhs))
    if any(p >= m.cols for p in pivots):
        return None
    x = [[Fraction(0)] * rhs.cols for _ in range(m.cols)]
    for i, p in enumerate(pivots):
        for j in range(rhs.cols):
            x[p][j] = red[i, m.cols + j]
    return RatMatrix.from_rows(x, cols=rhs.cols)


def inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square():
        raise NonSquare(f"inverse of a {m.rows}x{m.cols} matrix")
    x = solve(m, RatMatrix.identity(m.rows))
    if x is None or rank(m) < m.rows:
        raise ZeroDivisionError("matrix is singular")
    return x


def vector_rank(vectors: Sequence[Sequence]) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return rank(RatMatrix.from_rows(vectors))
