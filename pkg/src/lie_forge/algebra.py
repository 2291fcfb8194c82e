"""Structure-constants tensors and their structural analysis.

A Lie algebra presented by an antisymmetric tensor c[i][j][k] (0-based,
[e_i, e_j] = sum_k c[i][j][k] e_k) is checked for the Jacobi identity and
probed through its derived and lower central series, which are computed on
exact echelon-form subspaces so that termination and stabilization are
decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Mapping, Sequence, Tuple

from .exact import DimensionMismatchError, RationalLike, RationalVector, as_rational


class NotJacobiError(ValueError):
    """A structure tensor failed the Jacobi identity where one was required."""


def _rref(rows: Iterable[Sequence[Fraction]], dim: int) -> Tuple[RationalVector, ...]:
    """Reduced row echelon form with zero rows dropped (canonical basis)."""
    m = [list(r) for r in rows]
    pivot_row = 0
    for col in range(dim):
        pivot = next((r for r in range(pivot_row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[pivot_row], m[pivot] = m[pivot], m[pivot_row]
        inv = 1 / m[pivot_row][col]
        m[pivot_row] = [x * inv for x in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return tuple(RationalVector(row) for row in m[:pivot_row] if any(x != 0 for x in row))


@dataclass(frozen=True)
class Subspace:
    """Subspace of R^n held as a reduced-echelon basis.

    The echelon form is canonical, so two Subspace values describe the same
    subspace exactly when they compare equal.
    """

    dim: int
    basis: Tuple[RationalVector, ...]

    @classmethod
    def span(cls, dim: int, vectors: Iterable[RationalVector]) -> "Subspace":
        vecs = list(vectors)
        for v in vecs:
            if v.dim != dim:
                raise DimensionMismatchError(f"vector dim {v.dim} != ambient {dim}")
        return cls(dim, _rref(vecs, dim))

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, tuple(RationalVector.basis(dim, i) for i in range(dim)))

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, other: "Subspace") -> bool:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"ambient dims {self.dim} != {other.dim}")
        joined = _rref(list(self.basis) + list(other.basis), self.dim)
        return len(joined) == self.rank


class StructureConstants:
    """Antisymmetric rank-3 tensor defining a candidate Lie bracket."""

    __slots__ = ("dim", "c")

    def __init__(self, tensor: Sequence[Sequence[Sequence[RationalLike]]]):
        n = len(tensor)
        if n == 0:
            raise ValueError("dimension must be positive")
        c = tuple(
            tuple(tuple(as_rational(x) for x in row) for row in plane) for plane in tensor
        )
        if any(len(plane) != n or any(len(row) != n for row in plane) for plane in c):
            raise ValueError("tensor must be n x n x n")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if c[i][j][k] != -c[j][i][k]:
                        raise ValueError(
                            f"antisymmetry violated at ({i},{j},{k}): "
                            f"{c[i][j][k]} != -({c[j][i][k]})"
                        )
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("StructureConstants is immutable")

    @classmethod
    def zero(cls, dim: int) -> "StructureConstants":
        z = Fraction(0)
        return cls([[[z] * dim for _ in range(dim)] for _ in range(dim)])

    @classmethod
    def from_brackets(
        cls, dim: int, brackets: Mapping[Tuple[int, int], Mapping[int, RationalLike]]
    ) -> "StructureConstants":
        """Build from sparse [e_i, e_j] = {k: coeff} data, 0-based, i < j only."""
        tensor = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), comps in brackets.items():
            if not 0 <= i < j < dim:
                raise ValueError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim")
            for k, val in comps.items():
                if not 0 <= k < dim:
                    raise ValueError(f"component index {k} out of range")
                v = as_rational(val)
                tensor[i][j][k] = v
                tensor[j][i][k] = -v
        return cls(tensor)

    def __eq__(self, other) -> bool:
        return isinstance(other, StructureConstants) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __add__(self, other: "StructureConstants") -> "StructureConstants":
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dims {self.dim} != {other.dim}")
        n = self.dim
        return StructureConstants(
            [
                [[self.c[i][j][k] + other.c[i][j][k] for k in range(n)] for j in range(n)]
                for i in range(n)
            ]
        )

    def bracket_basis(self, i: int, j: int) -> RationalVector:
        """[e_i, e_j] as a coefficient vector."""
        return RationalVector(self.c[i][j])

    def bracket_vectors(self, x: RationalVector, y: RationalVector) -> RationalVector:
        """[x, y] by bilinear extension."""
        n = self.dim
        if x.dim != n or y.dim != n:
            raise DimensionMismatchError("vector dims do not match tensor dim")
        out = [Fraction(0)] * n
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                coeff = x[i] * y[j]
                row = self.c[i][j]
                for k in range(n):
                    if row[k] != 0:
                        out[k] += coeff * row[k]
        return RationalVector(out)

    def nonzero_entries(self) -> List[Tuple[int, int, int, Fraction]]:
        """Sparse listing of (i, j, k, value) with i < j."""
        n = self.dim
        return [
            (i, j, k, self.c[i][j][k])
            for i in range(n)
            for j in range(i + 1, n)
            for k in range(n)
            if self.c[i][j][k] != 0
        ]

    def __repr__(self) -> str:
        entries = ", ".join(f"c[{i}][{j}][{k}]={v}" for i, j, k, v in self.nonzero_entries())
        return f"StructureConstants(dim={self.dim}, {entries or '0'})"


@dataclass(frozen=True)
class JacobiViolation:
    triple: Tuple[int, int, int]
    residual: RationalVector


def jacobi_check(sc: StructureConstants) -> List[JacobiViolation]:
    """All basis triples i < j < k where the Jacobi cyclic sum is nonzero.

    Checking sorted triples suffices: the cyclic sum is trilinear and
    alternating, so it vanishes identically iff it vanishes there.
    """
    n = sc.dim
    violations = []
    for i in range(n):
        ei = RationalVector.basis(n, i)
        for j in range(i + 1, n):
            ej = RationalVector.basis(n, j)
            for k in range(j + 1, n):
                ek = RationalVector.basis(n, k)
                residual = (
                    sc.bracket_vectors(sc.bracket_basis(i, j), ek)
                    + sc.bracket_vectors(sc.bracket_basis(k, i), ej)
                    + sc.bracket_vectors(sc.bracket_basis(j, k), ei)
                )
                if not residual.is_zero():
                    violations.append(JacobiViolation((i, j, k), residual))
    return violations


def _require_jacobi(sc: StructureConstants) -> None:
    violations = jacobi_check(sc)
    if violations:
        first = violations[0]
        raise NotJacobiError(
            f"Jacobi identity fails on {len(violations)} basis triple(s), "
            f"first at {first.triple} with residual {first.residual}"
        )


def bracket_product(sc: StructureConstants, a: Subspace, b: Subspace) -> Subspace:
    """Echelon basis of span{[x, y] : x in basis(a), y in basis(b)}."""
    if a.dim != sc.dim or b.dim != sc.dim:
        raise DimensionMismatchError("subspace ambient dims do not match tensor dim")
    products = [sc.bracket_vectors(x, y) for x in a.basis for y in b.basis]
    return Subspace.span(sc.dim, products)


def _series(sc: StructureConstants, step) -> List[Subspace]:
    current = Subspace.full(sc.dim)
    series = [current]
    for _ in range(sc.dim + 1):
        nxt = step(current)
        series.append(nxt)
        if nxt.is_zero() or nxt == current:
            break
        current = nxt
    return series


def derived_series(sc: StructureConstants) -> List[Subspace]:
    """Iterated self-brackets until the chain hits zero or stabilizes."""
    _require_jacobi(sc)
    return _series(sc, lambda sub: bracket_product(sc, sub, sub))


def lower_central_series(sc: StructureConstants) -> List[Subspace]:
    """Iterated brackets against the full algebra until zero or stabilization."""
    _require_jacobi(sc)
    full = Subspace.full(sc.dim)
    return _series(sc, lambda sub: bracket_product(sc, sub, full))


def is_solvable(sc: StructureConstants) -> bool:
    return derived_series(sc)[-1].is_zero()


def is_nilpotent(sc: StructureConstants) -> bool:
    return lower_central_series(sc)[-1].is_zero()
