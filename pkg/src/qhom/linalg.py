"""Dense exact linear algebra over Q(q).

A :class:`Matrix` carries its shape explicitly, so 0 x n and n x 0 matrices
(which show up constantly at the ends of a degree window) compose correctly.
Elimination picks the first nonzero entry at or below the current row in each
column, which keeps every result deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CyclotomicInt, CyclotomicRational


@dataclass(frozen=True)
class Matrix:
    order: int
    nrows: int
    ncols: int
    rows: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError(f"matrix data does not match declared shape {self.nrows}x{self.ncols}")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rows(cls, order: int, rows, ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(_coerce(order, x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        return cls(order, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, order: int, nrows: int, ncols: int) -> "Matrix":
        z = CyclotomicInt.zero(order)
        return cls(order, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, order: int, n: int) -> "Matrix":
        z = CyclotomicInt.zero(order)
        one = CyclotomicInt.one(order)
        return cls(order, n, n, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, order: int, cols, nrows: int) -> "Matrix":
        cols = [tuple(c) for c in cols]
        return cls.from_rows(order, [[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    # -- access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def transpose(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix(self.order, self.ncols, 0, tuple(() for _ in range(self.ncols)))
        return Matrix(self.order, self.ncols, self.nrows, tuple(zip(*self.rows)))

    # -- arithmetic -----------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = CyclotomicInt.zero(self.order)
        out = []
        for ai in self.rows:
            row = [z] * other.ncols
            for k, x in enumerate(ai):
                if x.is_zero():
                    continue
                bk = other.rows[k]
                for j, y in enumerate(bk):
                    if not y.is_zero():
                        row[j] = row[j] + x * y
            out.append(tuple(row))
        return Matrix(self.order, self.nrows, other.ncols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.order, self.nrows, self.ncols,
                      tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.order, self.nrows, self.ncols,
                      tuple(tuple(x - y for x, y in zip(a, b)) for a, b in zip(self.rows, other.rows)))

    def __neg__(self):
        return Matrix(self.order, self.nrows, self.ncols, tuple(tuple(-x for x in r) for r in self.rows))

    def scale(self, c) -> "Matrix":
        return Matrix(self.order, self.nrows, self.ncols, tuple(tuple(c * x for x in r) for r in self.rows))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for a, b in zip(self.rows, other.rows) for x, y in zip(a, b)
        )

    def __hash__(self):
        return hash((self.order, self.nrows, self.ncols))

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def apply(self, v) -> tuple:
        """Matrix times a column vector."""
        if len(v) != self.ncols:
            raise ValueError("vector length does not match column count")
        z = CyclotomicInt.zero(self.order)
        out = []
        for r in self.rows:
            acc = z
            for x, y in zip(r, v):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            out.append(acc)
        return tuple(out)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    # -- elimination ----------------------------------------------------------

    def rref(self):
        """Reduced row echelon form over Q(q): (list of rows, pivot columns)."""
        rows = [[CyclotomicRational.from_any(x) for x in r] for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            if r == len(rows):
                break
            p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = rows[r][c].inverse()
            rows[r] = [x * inv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and not rows[i][c].is_zero():
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        return rows, pivots

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple]:
        """Basis of {x : M x = 0} as column vectors."""
        one = CyclotomicRational.one(self.order)
        zero = CyclotomicRational.zero(self.order)
        r, pivots = self.rref()
        basis = []
        for f in range(self.ncols):
            if f in pivots:
                continue
            v = [zero] * self.ncols
            v[f] = one
            for i, p in enumerate(pivots):
                v[p] = -r[i][f]
            basis.append(tuple(v))
        return basis


def _coerce(order, x):
    if isinstance(x, int):
        return CyclotomicInt.scalar(order, x)
    if not hasattr(x, "coeffs"):
        return CyclotomicRational.scalar(order, x)
    if x.order != order:
        raise ValueError(f"entry of order {x.order} in a matrix of order {order}")
    return x


def span_rank(order: int, vectors, dim: int) -> int:
    if not vectors:
        return 0
    return Matrix.from_columns(order, vectors, dim).rank()


def extend_basis(order: int, start, candidates, dim: int) -> list[tuple]:
    """Those ``candidates`` that, taken greedily in order, enlarge span(start)."""
    candidates = list(candidates)
    if not candidates or dim == 0:
        return []
    start = list(start)
    _, pivots = Matrix.from_columns(order, start + candidates, dim).rref()
    offset = len(start)
    return [candidates[p - offset] for p in pivots if p >= offset]


def solve(order: int, cols, b, dim: int):
    """Coefficients x with sum_j x_j cols[j] = b, or None when b is outside the span.

    ``cols`` should be linearly independent for the answer to be unique.
    """
    k = len(cols)
    if k == 0:
        return () if all(x.is_zero() for x in b) else None
    aug = Matrix.from_rows(order, [[c[i] for c in cols] + [b[i]] for i in range(dim)], ncols=k + 1)
    r, pivots = aug.rref()
    if k in pivots:
        return None
    zero = CyclotomicRational.zero(order)
    x = [zero] * k
    for i, p in enumerate(pivots):
        x[p] = r[i][k]
    return tuple(x)
