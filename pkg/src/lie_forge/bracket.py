"""Lie brackets generated by a linear map together with an eigenvector.

A pair (F, v) with F v = lambda v induces the bracket

    [psi, phi] = phi(v) * (psi . F) - psi(v) * (phi . F)

on covectors, which always satisfies the Jacobi identity.  This module also
evaluates the obstruction forms that decide the remaining questions: when a
non-eigenvector still yields a Lie bracket, when the sum of two pair
brackets stays a Lie bracket for every scaling of the second summand, and
whether a given linear bijection witnesses an isomorphism of two pair
algebras.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Sequence, Tuple, Union

from .algebra import StructureConstants
from .exact import (
    DimensionMismatchError,
    RationalLike,
    RationalMatrix,
    RationalVector,
    SingularMatrixError,
    as_rational,
    matrix_commutator,
    verify_eigenpair,
)

# Covectors are carried by their components against the dual basis.
Covector = RationalVector


@dataclass(frozen=True)
class AnchoredPair:
    """A linear map with a verified eigenvector.

    The eigenvalue is stored as given; no normalization is applied, so
    catalog matrices can be kept verbatim.
    """

    matrix: RationalMatrix
    eigenvector: RationalVector
    eigenvalue: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eigenvalue", as_rational(self.eigenvalue))
        if self.matrix.dim != self.eigenvector.dim:
            raise DimensionMismatchError(
                f"matrix dim {self.matrix.dim} != vector dim {self.eigenvector.dim}"
            )
        if self.eigenvector.is_zero():
            raise ValueError("eigenvector must be nonzero")
        if self.matrix.apply(self.eigenvector) != self.eigenvector.scale(self.eigenvalue):
            raise ValueError("eigenvector relation F v = lambda v does not hold exactly")

    @classmethod
    def from_eigenpair(cls, matrix: RationalMatrix, vector: RationalVector) -> "AnchoredPair":
        """Build a pair, discovering the eigenvalue; raises if there is none."""
        lam = verify_eigenpair(matrix, vector)
        if lam is None:
            raise ValueError("vector is not an exact rational eigenvector of the map")
        return cls(matrix, vector, lam)

    @property
    def dim(self) -> int:
        return self.matrix.dim


@dataclass(frozen=True)
class TrilinearDefect:
    """Covector values of an alternating 3-form on sorted basis triples.

    Only triples with a nonzero value are stored, so a zero defect is an
    emptiness check.
    """

    dim: int
    values: Dict[Tuple[int, int, int], Covector]

    def is_zero(self) -> bool:
        return not self.values

    def __getitem__(self, triple: Tuple[int, int, int]) -> Covector:
        return self.values.get(tuple(triple), RationalVector.zero(self.dim))


# A slot of a wedge expression is either scalar-valued (pairing with a fixed
# vector) or covector-valued (pullback along a fixed map).
@dataclass(frozen=True)
class _PairWith:
    vector: RationalVector


@dataclass(frozen=True)
class _PullbackAlong:
    matrix: RationalMatrix


_Slot = Union[_PairWith, _PullbackAlong]

_PERM_SIGNS = {
    2: [((0, 1), 1), ((1, 0), -1)],
    3: [
        (perm, 1 if sum(a > b for i, a in enumerate(perm) for b in perm[i + 1:]) % 2 == 0 else -1)
        for perm in permutations(range(3))
    ],
}


def _wedge_eval(slots: Sequence[_Slot], args: Sequence[Covector], dim: int) -> Covector:
    """Alternating sum over argument permutations; exactly one slot may be
    covector-valued, making the whole expression covector-valued."""
    total = RationalVector.zero(dim)
    for perm, sign in _PERM_SIGNS[len(slots)]:
        scalar = Fraction(sign)
        covector = None
        for slot, arg_index in zip(slots, perm):
            psi = args[arg_index]
            if isinstance(slot, _PairWith):
                scalar *= psi.dot(slot.vector)
                if scalar == 0:
                    break
            else:
                covector = slot.matrix.dual_apply(psi)
        else:
            total = total + covector.scale(scalar)
    return total


def pair_bracket(pair: AnchoredPair, left: Covector, right: Covector) -> Covector:
    """The bracket of two covectors induced by an anchored pair."""
    n = pair.dim
    if left.dim != n or right.dim != n:
        raise DimensionMismatchError("covector dims do not match the pair")
    lv = left.dot(pair.eigenvector)
    rv = right.dot(pair.eigenvector)
    return pair.matrix.dual_apply(left).scale(rv) - pair.matrix.dual_apply(right).scale(lv)


def structure_constants_of_pairs(pairs: Sequence[AnchoredPair]) -> StructureConstants:
    """Structure constants of the summed bracket of several pairs.

    The result is read off on all basis covector pairs.  Summing brackets
    does not by itself guarantee the Jacobi identity; validate the result
    with jacobi_check when that matters.
    """
    if not pairs:
        raise ValueError("at least one anchored pair is required")
    n = pairs[0].dim
    if any(p.dim != n for p in pairs):
        raise DimensionMismatchError("all pairs must share one dimension")
    brackets = {}
    for i in range(n):
        ei = RationalVector.basis(n, i)
        for j in range(i + 1, n):
            ej = RationalVector.basis(n, j)
            total = RationalVector.zero(n)
            for p in pairs:
                total = total + pair_bracket(p, ei, ej)
            if not total.is_zero():
                brackets[(i, j)] = {k: total[k] for k in range(n) if total[k] != 0}
    return StructureConstants.from_brackets(n, brackets)


def _defect_on_triples(slot_groups: Sequence[Sequence[_Slot]], dim: int) -> TrilinearDefect:
    values = {}
    basis = [RationalVector.basis(dim, i) for i in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                args = (basis[i], basis[j], basis[k])
                total = RationalVector.zero(dim)
                for slots in slot_groups:
                    total = total + _wedge_eval(slots, args, dim)
                if not total.is_zero():
                    values[(i, j, k)] = total
    return TrilinearDefect(dim, values)


def jacobi_defect_single(matrix: RationalMatrix, vector: RationalVector) -> TrilinearDefect:
    """Jacobi obstruction of the bracket built from (matrix, vector) when the
    vector is not assumed to be an eigenvector.

    The cyclic Jacobi sum of the bracket equals the alternating form with
    slots (pair with v, pair with Fv, pullback along F); the bracket is Lie
    iff this vanishes on all sorted basis triples.
    """
    if matrix.dim != vector.dim:
        raise DimensionMismatchError("matrix and vector dims differ")
    if vector.is_zero():
        raise ValueError("vector must be nonzero")
    image = matrix.apply(vector)
    slots = [_PairWith(vector), _PairWith(image), _PullbackAlong(matrix)]
    return _defect_on_triples([slots], matrix.dim)


def compatibility_defect(first: AnchoredPair, second: AnchoredPair) -> TrilinearDefect:
    """Obstruction to the sum of two pair brackets being Lie for every scaling.

    Evaluates, on all sorted basis triples,

        i_w ^ [F,G]* ^ i_v  +  i_w ^ i_{Gv} ^ F*  +  i_v ^ i_{Fw} ^ G*

    for (F, v) = first and (G, w) = second.  A zero defect is equivalent to
    [.,.]_first + t [.,.]_second satisfying Jacobi for every scalar t.
    """
    if first.dim != second.dim:
        raise DimensionMismatchError("pairs live in different dimensions")
    f, v = first.matrix, first.eigenvector
    g, w = second.matrix, second.eigenvector
    comm = matrix_commutator(f, g)
    groups = [
        [_PairWith(w), _PullbackAlong(comm), _PairWith(v)],
        [_PairWith(w), _PairWith(g.apply(v)), _PullbackAlong(f)],
        [_PairWith(v), _PairWith(f.apply(w)), _PullbackAlong(g)],
    ]
    return _defect_on_triples(groups, first.dim)


def corollary1_check(first: AnchoredPair, second: AnchoredPair) -> bool:
    """Sufficient conditions for compatibility: the maps commute, each
    annihilates the other's eigenvector, and both eigenvector relations hold."""
    if first.dim != second.dim:
        raise DimensionMismatchError("pairs live in different dimensions")
    f, v = first.matrix, first.eigenvector
    g, w = second.matrix, second.eigenvector
    return (
        matrix_commutator(f, g).is_zero()
        and verify_eigenpair(f, v) is not None
        and verify_eigenpair(g, w) is not None
        and f.apply(w).is_zero()
        and g.apply(v).is_zero()
    )


def isomorphism_witness_check(
    source: AnchoredPair, target: AnchoredPair, bijection: RationalMatrix
) -> bool:
    """Whether a linear bijection intertwines two pair brackets.

    Checks the bilinear identity

        i_{(Phi v)} ^ (Phi . F)*  =  i_w ^ (G . Phi)*

    on all basis covector pairs; when it holds, the transpose of the
    bijection is a Lie algebra isomorphism between the two bracket algebras.
    """
    n = source.dim
    if target.dim != n or bijection.dim != n:
        raise DimensionMismatchError("pair and bijection dims differ")
    if bijection.determinant() == 0:
        raise SingularMatrixError("witness map must be invertible")
    lhs_slots = [
        _PairWith(bijection.apply(source.eigenvector)),
        _PullbackAlong(bijection @ source.matrix),
    ]
    rhs_slots = [
        _PairWith(target.eigenvector),
        _PullbackAlong(target.matrix @ bijection),
    ]
    basis = [RationalVector.basis(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            args = (basis[i], basis[j])
            if _wedge_eval(lhs_slots, args, n) != _wedge_eval(rhs_slots, args, n):
                return False
    return True


@dataclass(frozen=True)
class Eigenvector:
    """The vector is an exact eigenvector; the induced bracket is always Lie."""

    eigenvalue: Fraction


@dataclass(frozen=True)
class DegenerateCase2:
    """Not an eigenvector, yet the bracket is Lie: the pullback map factors
    through pairings with v and Fv, with the recovered covector weights."""

    rho: Covector
    eta: Covector


@dataclass(frozen=True)
class NotLie:
    """The bracket from (matrix, vector) violates Jacobi; defect attached."""

    defect: TrilinearDefect


Remark1Result = Union[Eigenvector, DegenerateCase2, NotLie]


def remark1_classify(matrix: RationalMatrix, vector: RationalVector) -> Remark1Result:
    """Classify a (map, nonzero vector) pair by the bracket it induces.

    Either the vector is an eigenvector, or the Jacobi defect vanishes
    anyway and the dual map decomposes as i_v (x) rho + i_{Fv} (x) eta
    (the covectors are recovered by an exact linear solve), or the bracket
    is not Lie.
    """
    lam = verify_eigenpair(matrix, vector)
    if lam is not None:
        return Eigenvector(lam)
    defect = jacobi_defect_single(matrix, vector)
    if not defect.is_zero():
        return NotLie(defect)
    rho, eta = _solve_rank_two_factorization(matrix, vector)
    return DegenerateCase2(rho, eta)


def _solve_rank_two_factorization(
    matrix: RationalMatrix, vector: RationalVector
) -> Tuple[Covector, Covector]:
    """Solve F = v rho^T + (Fv) eta^T columnwise; v and Fv are independent here."""
    n = matrix.dim
    image = matrix.apply(vector)
    pair_rows = None
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            det = vector[r1] * image[r2] - vector[r2] * image[r1]
            if det != 0:
                pair_rows = (r1, r2, det)
                break
        if pair_rows:
            break
    if pair_rows is None:
        raise ValueError("vector and its image are dependent; not the degenerate case")
    r1, r2, det = pair_rows
    rho = [Fraction(0)] * n
    eta = [Fraction(0)] * n
    for j in range(n):
        b1 = matrix.rows[r1][j]
        b2 = matrix.rows[r2][j]
        rho[j] = (b1 * image[r2] - b2 * image[r1]) / det
        eta[j] = (vector[r1] * b2 - vector[r2] * b1) / det
        for r in range(n):
            if matrix.rows[r][j] != rho[j] * vector[r] + eta[j] * image[r]:
                raise ValueError(
                    "zero Jacobi defect without a rank-two factorization; "
                    "this contradicts the classification and indicates a bug"
                )
    return RationalVector(rho), RationalVector(eta)
