"""Exact exterior algebra over R^n: wedge products and the grade-2 Hodge star.

A k-vector is stored sparsely as a map from strictly increasing index tuples
(0-based) to rational coefficients.  The orientation is fixed once and for
all: e_0 ^ ... ^ e_{n-1} is the positive volume form, and the metric is
Euclidean, so the basis k-vectors are orthonormal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .exact import DimensionMismatchError, RationalLike, RationalVector, as_rational

IndexTuple = Tuple[int, ...]


class GradeError(ValueError):
    """Operand has the wrong exterior grade."""


def sort_with_sign(indices: Sequence[int]) -> tuple[int, IndexTuple]:
    """Sort indices, returning (permutation sign, sorted tuple).

    Sign 0 signals a repeated index (the wedge monomial vanishes).
    """
    idx = list(indices)
    sign = 1
    # insertion sort; each adjacent swap flips the sign
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, tuple(idx)
    return sign, tuple(idx)


class KVector:
    """Immutable exact multivector of fixed dimension and grade."""

    __slots__ = ("dim", "grade", "coeffs")

    def __init__(self, dim: int, grade: int, coeffs: Mapping[IndexTuple, RationalLike] | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if not 0 <= grade <= dim:
            raise GradeError(f"grade {grade} out of range for dimension {dim}")
        clean: Dict[IndexTuple, Fraction] = {}
        for key, val in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != grade:
                raise GradeError(f"key {key} does not have grade {grade}")
            if any(not 0 <= i < dim for i in key):
                raise IndexError(f"index out of range in {key} for dimension {dim}")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"key {key} is not strictly increasing")
            v = as_rational(val)
            if v != 0:
                clean[key] = clean.get(key, Fraction(0)) + v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v != 0})

    def __setattr__(self, name, value):
        raise AttributeError("KVector is immutable")

    @classmethod
    def basis(cls, dim: int, indices: Iterable[int]) -> "KVector":
        """Basis monomial e_{i1} ^ ... ^ e_{ik}; indices need not be sorted."""
        sign, key = sort_with_sign(tuple(indices))
        if sign == 0:
            return cls(dim, len(key), {})
        return cls(dim, len(key), {key: Fraction(sign)})

    @classmethod
    def from_vector(cls, v: RationalVector) -> "KVector":
        return cls(v.dim, 1, {(i,): v[i] for i in range(v.dim) if v[i] != 0})

    @classmethod
    def scalar(cls, dim: int, value: RationalLike) -> "KVector":
        return cls(dim, 0, {(): value})

    def __getitem__(self, key: IndexTuple) -> Fraction:
        return self.coeffs.get(tuple(key), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, KVector)
            and self.dim == other.dim
            and self.grade == other.grade
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.grade, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other: "KVector") -> "KVector":
        self._check_compatible(other)
        merged = dict(self.coeffs)
        for key, val in other.coeffs.items():
            merged[key] = merged.get(key, Fraction(0)) + val
        return KVector(self.dim, self.grade, merged)

    def __sub__(self, other: "KVector") -> "KVector":
        return self + (-1) * other

    def __neg__(self) -> "KVector":
        return (-1) * self

    def scale(self, c: RationalLike) -> "KVector":
        c = as_rational(c)
        return KVector(self.dim, self.grade, {k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, c) -> "KVector":
        return self.scale(c)

    def _check_compatible(self, other: "KVector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dims {self.dim} != {other.dim}")
        if self.grade != other.grade:
            raise GradeError(f"grades {self.grade} != {other.grade}")

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"KVector({self.dim}, {self.grade}, 0)"
        terms = " + ".join(
            f"{v}*e{''.join(str(i) for i in k)}" if k else str(v)
            for k, v in sorted(self.coeffs.items())
        )
        return f"KVector({self.dim}, {self.grade}, {terms})"


def wedge(a: KVector, b: KVector) -> KVector:
    """Exterior product a ^ b with the sign from sorting merged indices."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dims {a.dim} != {b.dim}")
    grade = a.grade + b.grade
    if grade > a.dim:
        raise GradeError(f"grade {a.grade}+{b.grade} exceeds dimension {a.dim}")
    out: Dict[IndexTuple, Fraction] = {}
    for ka, va in a.coeffs.items():
        for kb, vb in b.coeffs.items():
            sign, key = sort_with_sign(ka + kb)
            if sign == 0:
                continue
            out[key] = out.get(key, Fraction(0)) + sign * va * vb
    return KVector(a.dim, grade, out)


def hodge_star_2(b: KVector) -> KVector:
    """Hodge dual of a 2-vector under the Euclidean metric.

    *(e_i ^ e_j) = sign(i, j, rest) * e_rest, where rest lists the remaining
    indices in increasing order; extended linearly.  Only grade 2 is
    supported, other grades are rejected outright.
    """
    if b.grade != 2:
        raise GradeError(f"hodge_star_2 requires grade 2, got {b.grade}")
    n = b.dim
    out: Dict[IndexTuple, Fraction] = {}
    for (i, j), val in b.coeffs.items():
        rest = tuple(k for k in range(n) if k != i and k != j)
        sign, _ = sort_with_sign((i, j) + rest)
        out[rest] = out.get(rest, Fraction(0)) + sign * val
    return KVector(n, n - 2, out)


def top_coefficient(w: KVector) -> Fraction:
    """Coefficient of the volume form e_0 ^ ... ^ e_{n-1} in a top-grade vector."""
    if w.grade != w.dim:
        raise GradeError(f"top_coefficient requires grade {w.dim}, got {w.grade}")
    return w[tuple(range(w.dim))]
