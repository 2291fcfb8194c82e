"""Shared generators and independent oracles for the test suite.

The oracles here deliberately re-derive results along different code paths
than the library: explicit term expansions instead of permutation machinery,
Gram determinants instead of Hodge duals, finite differences instead of dual
numbers, and symbolic polynomial derivatives for nested ternary brackets.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest

from lie_forge import (
    AnchoredPair,
    RationalMatrix,
    RationalVector,
    StructureConstants,
    structure_constants_of_pairs,
)
from lie_forge.casimir import (
    Add,
    Const,
    Div,
    Expr,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    evaluate,
)

# ---------------------------------------------------------------------------
# Random exact data
# ---------------------------------------------------------------------------

def rand_rational(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice((1, 1, 2, 3)))


def rand_matrix(rng: random.Random, dim: int, span: int = 3) -> RationalMatrix:
    return RationalMatrix(
        [[rand_rational(rng, span) for _ in range(dim)] for _ in range(dim)]
    )


def rand_invertible(rng: random.Random, dim: int) -> RationalMatrix:
    while True:
        m = rand_matrix(rng, dim, 2)
        if m.determinant() != 0:
            return m


def rand_anchored_pair(rng: random.Random, dim: int) -> AnchoredPair:
    """Random pair: the anchor column is lambda * e_anchor, so the basis
    vector is an exact eigenvector."""
    anchor = rng.randrange(dim)
    lam = rand_rational(rng)
    rows = [[rand_rational(rng) for _ in range(dim)] for _ in range(dim)]
    for r in range(dim):
        rows[r][anchor] = lam if r == anchor else Fraction(0)
    return AnchoredPair(
        RationalMatrix(rows), RationalVector.basis(dim, anchor), lam
    )


def rand_strictly_lower(rng: random.Random, dim: int) -> RationalMatrix:
    rows = [
        [rand_rational(rng) if r > c else Fraction(0) for c in range(dim)]
        for r in range(dim)
    ]
    return RationalMatrix(rows)


def rand_nilpotent_pair_conjugated(rng: random.Random, dim: int):
    """Strictly triangular map conjugated into a random basis, with the
    transported eigenvector; the map stays exactly nilpotent."""
    base = rand_strictly_lower(rng, dim)
    anchor = RationalVector.basis(dim, dim - 1)  # last column of base is zero
    change = rand_invertible(rng, dim)
    conjugated = change @ base @ change.inverse()
    return AnchoredPair(conjugated, change.apply(anchor), Fraction(0))


def rand_corollary1_couple(rng: random.Random, dim: int, nilpotent: bool = False):
    """Two pairs on disjoint index blocks satisfying the five compatibility
    conditions: commuting maps, each annihilating the other's eigenvector.
    With nilpotent=True both maps are strictly triangular on their blocks."""
    if dim < 2:
        raise ValueError("need dim >= 2 for two disjoint blocks")
    indices = list(range(dim))
    rng.shuffle(indices)
    cut = rng.randint(1, dim - 1)
    block_a, block_b = indices[:cut], indices[cut:]

    def block_map(block):
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        anchor = block[-1]
        lam = Fraction(0) if nilpotent else rand_rational(rng)
        for ri, r in enumerate(block):
            for ci, c in enumerate(block):
                if nilpotent:
                    if ri > ci:
                        rows[r][c] = rand_rational(rng)
                else:
                    if c != anchor:
                        rows[r][c] = rand_rational(rng)
        rows[anchor][anchor] = lam
        return AnchoredPair(
            RationalMatrix(rows), RationalVector.basis(dim, anchor), lam
        )

    return block_map(block_a), block_map(block_b)


def rand_jacobi_tensor(rng: random.Random, dim: int) -> StructureConstants:
    """Random tensor that provably satisfies Jacobi: a single pair bracket,
    two pair brackets sharing an eigenvector, or a compatible block couple."""
    kind = rng.randrange(3)
    if kind == 0 or dim < 2:
        pairs = [rand_anchored_pair(rng, dim)]
    elif kind == 1:
        # two maps sharing one eigenvector: the sum is the bracket of (F+G, v)
        first = rand_anchored_pair(rng, dim)
        anchor = next(i for i in range(dim) if first.eigenvector[i] != 0)
        lam = rand_rational(rng)
        rows = [[rand_rational(rng) for _ in range(dim)] for _ in range(dim)]
        for r in range(dim):
            rows[r][anchor] = lam if r == anchor else Fraction(0)
        second = AnchoredPair(
            RationalMatrix(rows), RationalVector.basis(dim, anchor), lam
        )
        pairs = [first, second]
    else:
        pairs = list(rand_corollary1_couple(rng, dim))
    return structure_constants_of_pairs(pairs)


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def raw_pair_bracket(
    matrix: RationalMatrix, vector: RationalVector, left: RationalVector, right: RationalVector
) -> RationalVector:
    """The bracket formula applied without any eigenvector assumption."""
    return matrix.dual_apply(left).scale(right.dot(vector)) - matrix.dual_apply(
        right
    ).scale(left.dot(vector))


def jacobi_cyclic_sum(bracket, x, y, z):
    """[[x,y],z] + [[z,x],y] + [[y,z],x] for any bracket callable."""
    return bracket(bracket(x, y), z) + bracket(bracket(z, x), y) + bracket(bracket(y, z), x)


def defect18_oracle(matrix, vector, psi, phi, zeta):
    """Explicit six-term expansion of the single-map Jacobi obstruction."""
    image = matrix.apply(vector)
    pull = matrix.dual_apply
    return (
        pull(zeta).scale(psi.dot(vector) * phi.dot(image))
        + pull(psi).scale(zeta.dot(image) * phi.dot(vector))
        + pull(phi).scale(psi.dot(image) * zeta.dot(vector))
        - pull(zeta).scale(psi.dot(image) * phi.dot(vector))
        - pull(psi).scale(zeta.dot(vector) * phi.dot(image))
        - pull(phi).scale(psi.dot(vector) * zeta.dot(image))
    )


def defect14_oracle(first: AnchoredPair, second: AnchoredPair, psi, phi, zeta):
    """Explicit eighteen-term expansion of the compatibility obstruction."""
    f, v = first.matrix, first.eigenvector
    g, w = second.matrix, second.eigenvector
    comm = (f @ g) - (g @ f)
    gv = g.apply(v)
    fw = f.apply(w)
    pc, pf, pg = comm.dual_apply, f.dual_apply, g.dual_apply
    return (
        pc(psi).scale(zeta.dot(w) * phi.dot(v))
        - pc(phi).scale(zeta.dot(w) * psi.dot(v))
        + pc(zeta).scale(phi.dot(w) * psi.dot(v))
        - pc(psi).scale(phi.dot(w) * zeta.dot(v))
        + pc(phi).scale(psi.dot(w) * zeta.dot(v))
        - pc(zeta).scale(psi.dot(w) * phi.dot(v))
        + pf(zeta).scale(psi.dot(w) * phi.dot(gv) - phi.dot(w) * psi.dot(gv))
        + pf(phi).scale(zeta.dot(w) * psi.dot(gv) - psi.dot(w) * zeta.dot(gv))
        + pf(psi).scale(phi.dot(w) * zeta.dot(gv) - zeta.dot(w) * phi.dot(gv))
        + pg(zeta).scale(psi.dot(v) * phi.dot(fw) - phi.dot(v) * psi.dot(fw))
        + pg(phi).scale(zeta.dot(v) * psi.dot(fw) - psi.dot(v) * zeta.dot(fw))
        + pg(psi).scale(phi.dot(v) * zeta.dot(fw) - zeta.dot(v) * phi.dot(fw))
    )


def gram_pairing_2(w_key, t_key) -> int:
    """Euclidean pairing of two basis 2-vectors as a 2x2 Gram determinant."""
    (a, b), (c, d) = w_key, t_key
    delta = lambda x, y: 1 if x == y else 0
    return delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c)


def central_difference_gradient(expr: Expr, point, h: float = 1e-6):
    grads = []
    for i in range(len(point)):
        plus = list(point)
        minus = list(point)
        plus[i] += h
        minus[i] -= h
        grads.append((evaluate(expr, plus) - evaluate(expr, minus)) / (2 * h))
    return grads


# ---------------------------------------------------------------------------
# Symbolic polynomial calculus (for nested ternary brackets)
# ---------------------------------------------------------------------------

def poly_diff(e: Expr, index: int) -> Expr:
    """d/dx_index of a polynomial AST (1-based index)."""
    if isinstance(e, Const):
        return Const(Fraction(0))
    if isinstance(e, Var):
        return Const(Fraction(1 if e.index == index else 0))
    if isinstance(e, Neg):
        return Neg(poly_diff(e.arg, index))
    if isinstance(e, Add):
        return Add(poly_diff(e.lhs, index), poly_diff(e.rhs, index))
    if isinstance(e, Sub):
        return Sub(poly_diff(e.lhs, index), poly_diff(e.rhs, index))
    if isinstance(e, Mul):
        return Add(
            Mul(poly_diff(e.lhs, index), e.rhs), Mul(e.lhs, poly_diff(e.rhs, index))
        )
    if isinstance(e, Pow) and e.exponent.denominator == 1 and e.exponent >= 1:
        k = int(e.exponent)
        lowered = e.base if k == 2 else Pow(e.base, Fraction(k - 1))
        return Mul(Mul(Const(Fraction(k)), lowered), poly_diff(e.base, index))
    raise TypeError(f"not a polynomial node: {e!r}")


def nambu_expr(f1: Expr, f2: Expr, f3: Expr) -> Expr:
    """The ternary Jacobian bracket of three polynomials, as a polynomial."""
    rows = [f1, f2, f3]
    total: Expr = Const(Fraction(0))
    for perm in permutations(range(3)):
        inversions = sum(a > b for i, a in enumerate(perm) for b in perm[i + 1:])
        term: Expr = Mul(
            Mul(poly_diff(rows[0], perm[0] + 1), poly_diff(rows[1], perm[1] + 1)),
            poly_diff(rows[2], perm[2] + 1),
        )
        total = Sub(total, term) if inversions % 2 else Add(total, term)
    return total


def rand_poly2(rng: random.Random, dim: int = 3) -> Expr:
    """Random polynomial of total degree <= 2."""
    terms = [Const(rand_rational(rng))]
    for i in range(1, dim + 1):
        if rng.random() < 0.7:
            terms.append(Mul(Const(rand_rational(rng)), Var(i)))
        for j in range(i, dim + 1):
            if rng.random() < 0.4:
                terms.append(Mul(Const(rand_rational(rng)), Mul(Var(i), Var(j))))
    total = terms[0]
    for t in terms[1:]:
        total = Add(total, t)
    return total


@pytest.fixture
def rng():
    return random.Random(20240817)
