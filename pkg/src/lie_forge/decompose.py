"""Splitting a structure tensor into anchored pairs and putting it back.

Any antisymmetric tensor c[i][j][k] on R^n can be written as the sum of n
pair brackets, one anchored at each basis vector with eigenvalue 0.  The
pair anchored at e_a collects row blocks of the tensor slice c[.][a][.]
and a diagonal tail of entries -c[a][m][m], arranged so that every tensor
entry is contributed by exactly one pair.  For a tensor satisfying Jacobi
the summed bracket is a Lie bracket isomorphic to the original algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .algebra import NotJacobiError, StructureConstants, jacobi_check
from .bracket import AnchoredPair, structure_constants_of_pairs
from .exact import RationalMatrix, RationalVector


@dataclass(frozen=True)
class Decomposition:
    """n anchored pairs whose summed bracket reproduces the source tensor.

    Pair m (0-based) is anchored at basis vector e_{n-1-m} with eigenvalue 0.
    """

    pairs: Tuple[AnchoredPair, ...]
    source: StructureConstants


def _template_matrix(sc: StructureConstants, anchor: int) -> RationalMatrix:
    """The map anchored at e_anchor: rows r < anchor carry c[r][anchor][s]
    (anchor column zeroed), rows m > anchor only the diagonal -c[anchor][m][m]."""
    n = sc.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for r in range(anchor):
        for s in range(n):
            if s != anchor:
                rows[r][s] = sc.c[r][anchor][s]
    for m in range(anchor + 1, n):
        rows[m][m] = -sc.c[anchor][m][m]
    return RationalMatrix(rows)


def decompose(sc: StructureConstants, require_jacobi: bool = True) -> Decomposition:
    """Produce the n template pairs for a structure tensor.

    By default the tensor must satisfy Jacobi, since only then is the
    reassembled algebra a Lie algebra; pass require_jacobi=False to apply
    the templates to a raw antisymmetric tensor anyway.
    """
    if require_jacobi:
        violations = jacobi_check(sc)
        if violations:
            raise NotJacobiError(
                f"tensor fails Jacobi on {len(violations)} triple(s); "
                "pass require_jacobi=False to decompose it regardless"
            )
    n = sc.dim
    pairs = tuple(
        AnchoredPair(
            _template_matrix(sc, anchor),
            RationalVector.basis(n, anchor),
            Fraction(0),
        )
        for anchor in range(n - 1, -1, -1)
    )
    return Decomposition(pairs, sc)


def reconstruct(decomposition: Decomposition) -> StructureConstants:
    """Structure constants of the summed bracket of the decomposition pairs."""
    return structure_constants_of_pairs(decomposition.pairs)
