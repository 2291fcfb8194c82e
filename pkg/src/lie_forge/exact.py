"""Exact rational scalars, vectors and square matrices.

Everything downstream (brackets, structure constants, series, the
decomposition templates) runs on these carriers, so all arithmetic here is
exact: scalars are ``fractions.Fraction`` (arbitrary-precision, always in
lowest terms with a positive denominator), and no operation ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]


class DimensionMismatchError(ValueError):
    """Operands live in spaces of different dimensions."""


class SingularMatrixError(ValueError):
    """An invertible matrix was required."""


def as_rational(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or string like "-1/2" / "0.25" to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class RationalVector:
    """Immutable vector with exact rational entries.

    Convention: vectors are columns; matrices act on them from the left.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[RationalLike]):
        object.__setattr__(self, "entries", tuple(as_rational(e) for e in entries))
        if not self.entries:
            raise ValueError("vector must have positive dimension")

    def __setattr__(self, name, value):
        raise AttributeError("RationalVector is immutable")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def zero(cls, dim: int) -> "RationalVector":
        return cls([Fraction(0)] * dim)

    @classmethod
    def basis(cls, dim: int, index: int) -> "RationalVector":
        """Standard basis vector e_index (0-based)."""
        if not 0 <= index < dim:
            raise IndexError(f"basis index {index} out of range for dim {dim}")
        return cls([Fraction(1) if i == index else Fraction(0) for i in range(dim)])

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalVector) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __add__(self, other: "RationalVector") -> "RationalVector":
        self._check_dim(other)
        return RationalVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        self._check_dim(other)
        return RationalVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "RationalVector":
        return RationalVector(-a for a in self.entries)

    def scale(self, c: RationalLike) -> "RationalVector":
        c = as_rational(c)
        return RationalVector(c * a for a in self.entries)

    def __rmul__(self, c) -> "RationalVector":
        return self.scale(c)

    def dot(self, other: "RationalVector") -> Fraction:
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def _check_dim(self, other: "RationalVector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"vector dims {self.dim} != {other.dim}")

    def __repr__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.entries) + ")"


class RationalMatrix:
    """Immutable square matrix with exact rational entries, row-major.

    A matrix acts on column vectors: ``apply(v)`` is the standard product
    F v, so column j holds the image of the j-th basis vector.  The induced
    dual map on covector components is ``dual_apply``, the transpose product.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[RationalLike]]):
        object.__setattr__(
            self, "rows", tuple(tuple(as_rational(x) for x in row) for row in rows)
        )
        n = len(self.rows)
        if n == 0:
            raise ValueError("matrix must have positive dimension")
        for row in self.rows:
            if len(row) != n:
                raise ValueError("matrix must be square")

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, dim: int) -> "RationalMatrix":
        return cls([[Fraction(0)] * dim for _ in range(dim)])

    @classmethod
    def identity(cls, dim: int) -> "RationalMatrix":
        return cls(
            [[Fraction(1) if i == j else Fraction(0) for j in range(dim)] for i in range(dim)]
        )

    @classmethod
    def diagonal(cls, diag: Sequence[RationalLike]) -> "RationalMatrix":
        d = [as_rational(x) for x in diag]
        n = len(d)
        return cls([[d[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __getitem__(self, i: int):
        return self.rows[i]

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_dim(other)
        return RationalMatrix(
            [a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_dim(other)
        return RationalMatrix(
            [a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([-a for a in r] for r in self.rows)

    def scale(self, c: RationalLike) -> "RationalMatrix":
        c = as_rational(c)
        return RationalMatrix([c * a for a in r] for r in self.rows)

    def __rmul__(self, c) -> "RationalMatrix":
        return self.scale(c)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_dim(other)
        n = self.dim
        cols = list(zip(*other.rows))
        return RationalMatrix(
            [
                [sum((self.rows[i][k] * cols[j][k] for k in range(n)), Fraction(0)) for j in range(n)]
                for i in range(n)
            ]
        )

    def apply(self, v: RationalVector) -> RationalVector:
        """Matrix-vector product F v."""
        if v.dim != self.dim:
            raise DimensionMismatchError(f"matrix dim {self.dim} != vector dim {v.dim}")
        return RationalVector(
            sum((row[j] * v[j] for j in range(self.dim)), Fraction(0)) for row in self.rows
        )

    def dual_apply(self, psi: RationalVector) -> RationalVector:
        """Transpose product: components of the pulled-back covector psi . F."""
        if psi.dim != self.dim:
            raise DimensionMismatchError(f"matrix dim {self.dim} != covector dim {psi.dim}")
        n = self.dim
        return RationalVector(
            sum((self.rows[r][s] * psi[r] for r in range(n)), Fraction(0)) for s in range(n)
        )

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows))

    def column(self, j: int) -> RationalVector:
        return RationalVector(row[j] for row in self.rows)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def determinant(self) -> Fraction:
        """Exact determinant via fraction Gaussian elimination."""
        n = self.dim
        m = [list(row) for row in self.rows]
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                if m[r][col] != 0:
                    factor = m[r][col] * inv
                    for c in range(col, n):
                        m[r][c] -= factor * m[col][c]
        return det

    def inverse(self) -> "RationalMatrix":
        """Exact inverse via Gauss-Jordan elimination."""
        n = self.dim
        m = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
             for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            m[col], m[pivot] = m[pivot], m[col]
            inv = 1 / m[col][col]
            m[col] = [x * inv for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    factor = m[r][col]
                    m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
        return RationalMatrix(row[n:] for row in m)

    def _check_dim(self, other: "RationalMatrix") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"matrix dims {self.dim} != {other.dim}")

    def __repr__(self) -> str:
        return "[" + "; ".join(" ".join(str(a) for a in r) for r in self.rows) + "]"


def mat_apply(F: RationalMatrix, v: RationalVector) -> RationalVector:
    """Standard matrix-vector product F v."""
    return F.apply(v)


def matrix_commutator(F: RationalMatrix, G: RationalMatrix) -> RationalMatrix:
    """Commutator FG - GF of two endomorphisms."""
    return (F @ G) - (G @ F)


def verify_eigenpair(F: RationalMatrix, v: RationalVector) -> Fraction | None:
    """Return the exact rational eigenvalue of F on v, or None.

    The candidate eigenvalue is the ratio of the first nonzero component of
    F v to the same component of v, then checked against every component.
    A zero vector is rejected: eigenvectors are nonzero by definition.
    """
    if v.is_zero():
        raise ValueError("zero vector cannot be an eigenvector")
    w = F.apply(v)
    if w.is_zero():
        return Fraction(0)
    lead = next(i for i in range(w.dim) if w[i] != 0)
    if v[lead] == 0:
        return None
    lam = w[lead] / v[lead]
    if all(w[i] == lam * v[i] for i in range(v.dim)):
        return lam
    return None
