"""Lie algebras from linear maps with eigenvectors.

A pair (F, v) with F v = lambda v induces a Lie bracket on the dual space;
sums of such brackets reach every finite-dimensional Lie algebra.  The
package builds those brackets exactly over the rationals, analyzes the
resulting algebras (Jacobi, solvability, nilpotency, compatibility of
bracket sums), decomposes arbitrary structure tensors back into pairs, and
verifies Casimir invariants numerically through Lie-Poisson, ternary
Jacobian, and wedge/Hodge bracket evaluations with forward-mode
differentiation.
"""

from .algebra import (
    JacobiViolation,
    NotJacobiError,
    StructureConstants,
    Subspace,
    bracket_product,
    derived_series,
    is_nilpotent,
    is_solvable,
    jacobi_check,
    lower_central_series,
)
from .bracket import (
    AnchoredPair,
    Covector,
    DegenerateCase2,
    Eigenvector,
    NotLie,
    TrilinearDefect,
    compatibility_defect,
    corollary1_check,
    isomorphism_witness_check,
    jacobi_defect_single,
    pair_bracket,
    remark1_classify,
    structure_constants_of_pairs,
)
from .casimir import (
    CasimirReport,
    DualNumber,
    Expr,
    ExprDomainError,
    ExprSyntaxError,
    SampleConfig,
    evaluate,
    format_expr,
    gradient,
    hodge_poisson_bracket,
    integrating_factor_check,
    lie_poisson_bracket,
    nambu3,
    parse_expr,
    verify_casimir,
)
from .catalog import CatalogEntry, list_catalog, lookup
from .decompose import Decomposition, decompose, reconstruct
from .exact import (
    DimensionMismatchError,
    Rational,
    RationalMatrix,
    RationalVector,
    SingularMatrixError,
    mat_apply,
    matrix_commutator,
    verify_eigenpair,
)
from .multivector import GradeError, KVector, hodge_star_2, top_coefficient, wedge

__all__ = [
    "AnchoredPair",
    "CasimirReport",
    "CatalogEntry",
    "Covector",
    "Decomposition",
    "DegenerateCase2",
    "DimensionMismatchError",
    "DualNumber",
    "Eigenvector",
    "Expr",
    "ExprDomainError",
    "ExprSyntaxError",
    "GradeError",
    "JacobiViolation",
    "KVector",
    "NotJacobiError",
    "NotLie",
    "Rational",
    "RationalMatrix",
    "RationalVector",
    "SampleConfig",
    "SingularMatrixError",
    "StructureConstants",
    "Subspace",
    "TrilinearDefect",
    "bracket_product",
    "compatibility_defect",
    "corollary1_check",
    "decompose",
    "derived_series",
    "evaluate",
    "format_expr",
    "gradient",
    "hodge_poisson_bracket",
    "hodge_star_2",
    "integrating_factor_check",
    "is_nilpotent",
    "is_solvable",
    "isomorphism_witness_check",
    "jacobi_check",
    "jacobi_defect_single",
    "lie_poisson_bracket",
    "list_catalog",
    "lookup",
    "lower_central_series",
    "mat_apply",
    "matrix_commutator",
    "nambu3",
    "pair_bracket",
    "parse_expr",
    "reconstruct",
    "remark1_classify",
    "structure_constants_of_pairs",
    "top_coefficient",
    "verify_casimir",
    "verify_eigenpair",
    "wedge",
]

__version__ = "0.1.0"
