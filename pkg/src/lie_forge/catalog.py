"""Embedded catalog of the classical three- and four-dimensional Lie algebras
presented by linear maps with eigenvectors.

Each entry carries the generating pairs, the expected commutator tensor, and
(for the three-dimensional rows) a closed-form invariant with its
integrating factor.  Entries are validated on lookup: the summed pair
bracket must reproduce the stored tensor exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import StructureConstants
from .bracket import AnchoredPair, structure_constants_of_pairs
from .casimir import Expr, parse_expr
from .exact import RationalLike, RationalMatrix, RationalVector, as_rational

Params = Mapping[str, Fraction]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    parameters: Dict[str, Fraction]
    pairs: Tuple[AnchoredPair, ...]
    commutators: StructureConstants
    casimirs: Tuple[Expr, ...]
    casimir_texts: Tuple[str, ...]
    integrating_factor: Optional[Expr]
    integrating_factor_text: Optional[str]
    notes: Tuple[str, ...]


@dataclass(frozen=True)
class _Row:
    name: str
    dim: int
    param_names: Tuple[str, ...]
    pairs: Callable[[Params], Sequence[Tuple[Sequence[Sequence[RationalLike]], int]]]
    brackets: Callable[[Params], Mapping[Tuple[int, int], Mapping[int, RationalLike]]]
    casimirs: Callable[[Params], Tuple[str, ...]]
    factor: Callable[[Params], Optional[str]]
    notes: Tuple[str, ...] = ()


_ROWS: Dict[str, _Row] = {}


def _row(name, dim, param_names, pairs, brackets, casimirs=lambda p: (), factor=lambda p: None, notes=()):
    _ROWS[name] = _Row(name, dim, tuple(param_names), pairs, brackets, casimirs, factor, notes)


def _lit(q: Fraction) -> str:
    """Rational constant as a parenthesized literal, safe in any position."""
    return f"({q})"


# --- three-dimensional rows -------------------------------------------------

_row(
    "g3,1", 3, (),
    lambda p: [([[0, 0, 0], [1, 0, 0], [0, 0, 0]], 3)],
    lambda p: {(2, 3): {1: 1}},
    lambda p: ("x1",),
    lambda p: "1/x1",
)

_row(
    "g3,2", 3, (),
    lambda p: [([[1, 0, 0], [1, 1, 0], [0, 0, 0]], 3)],
    lambda p: {(1, 3): {1: 1}, (2, 3): {1: 1, 2: 1}},
    lambda p: ("x1*exp(-x2/x1)",),
    lambda p: "(1/x1)*exp(-x2/x1)",
)

_row(
    "g3,3", 3, (),
    lambda p: [([[1, 0, 0], [0, 1, 0], [0, 0, 0]], 3)],
    lambda p: {(1, 3): {1: 1}, (2, 3): {2: 1}},
    lambda p: ("x2/x1",),
    lambda p: "-1/x1^2",
    notes=(
        "integrating factor stored as -1/x1^2: the sign is forced by "
        "grad(x2/x1) = (-x2/x1^2, 1/x1, 0) against the field (x2, -x1, 0)",
    ),
)

_row(
    "g3,4", 3, (),
    lambda p: [([[1, 0, 0], [0, -1, 0], [0, 0, 0]], 3)],
    lambda p: {(1, 3): {1: 1}, (2, 3): {2: -1}},
    lambda p: ("x1*x2",),
    lambda p: "-1",
)

_row(
    "g3,5", 3, ("a",),
    lambda p: [([[1, 0, 0], [0, p["a"], 0], [0, 0, 0]], 3)],
    lambda p: {(1, 3): {1: 1}, (2, 3): {2: p["a"]}},
    lambda p: (f"x2/x1^{_lit(p['a'])}",),
    lambda p: f"-1/x1^{_lit(p['a'] + 1)}",
    notes=(
        "invariant stored as x2/x1^a: the commutation relations "
        "[e1*,e3*]=e1*, [e2*,e3*]=a e2* force the second coordinate in the "
        "numerator, and the gradient identity then fixes l = -1/x1^(a+1)",
    ),
)

_row(
    "g3,6", 3, (),
    lambda p: [([[0, -1, 0], [1, 0, 0], [0, 0, 0]], 3)],
    lambda p: {(1, 3): {2: -1}, (2, 3): {1: 1}},
    lambda p: ("x1^2+x2^2",),
    lambda p: "2",
)

_row(
    "g3,7", 3, ("a",),
    lambda p: [([[p["a"], -1, 0], [1, p["a"], 0], [0, 0, 0]], 3)],
    lambda p: {(1, 3): {1: p["a"], 2: -1}, (2, 3): {1: 1, 2: p["a"]}},
    lambda p: (f"(x1^2+x2^2)*exp(2*{_lit(p['a'])}*arctg(x1/x2))",),
    lambda p: f"2*exp(2*{_lit(p['a'])}*arctg(x1/x2))",
)

_row(
    "g3,8", 3, (),
    lambda p: [
        ([[0, -2, 0], [0, 0, 0], [0, 0, 0]], 3),
        ([[1, 0, 0], [0, 0, 0], [0, 0, -1]], 2),
    ],
    lambda p: {(1, 2): {1: 1}, (1, 3): {2: -2}, (2, 3): {3: 1}},
    lambda p: ("x1*x3+x2^2",),
    lambda p: "1",
)

_row(
    "g3,9", 3, (),
    lambda p: [
        ([[0, -1, 0], [1, 0, 0], [0, 0, 0]], 3),
        ([[0, 0, 1], [0, 0, 0], [0, 0, 0]], 2),
    ],
    lambda p: {(1, 2): {3: 1}, (1, 3): {2: -1}, (2, 3): {1: 1}},
    lambda p: ("x1^2+x2^2+x3^2",),
    lambda p: "2",
)

# --- four-dimensional rows --------------------------------------------------

_G_LOWER_SHIFT = [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]

_row(
    "g4,1", 4, (),
    lambda p: [([[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]], 4)],
    lambda p: {(2, 4): {1: 1}, (3, 4): {2: 1}},
)

_row(
    "g4,2", 4, ("a",),
    lambda p: [([[p["a"], 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 0]], 4)],
    lambda p: {(1, 4): {1: p["a"]}, (2, 4): {2: 1}, (3, 4): {2: 1, 3: 1}},
)

_row(
    "g4,3", 4, (),
    lambda p: [([[1, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]], 4)],
    lambda p: {(1, 4): {1: 1}, (3, 4): {2: 1}},
)

_row(
    "g4,4", 4, (),
    lambda p: [([[1, 0, 0, 0], [1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 0]], 4)],
    lambda p: {(1, 4): {1: 1}, (2, 4): {1: 1, 2: 1}, (3, 4): {2: 1, 3: 1}},
)

_row(
    "g4,5", 4, ("a", "b"),
    lambda p: [([[1, 0, 0, 0], [0, p["a"], 0, 0], [0, 0, p["b"], 0], [0, 0, 0, 0]], 4)],
    lambda p: {(1, 4): {1: 1}, (2, 4): {2: p["a"]}, (3, 4): {3: p["b"]}},
)

_row(
    "g4,6", 4, ("a", "b"),
    lambda p: [([[p["a"], 0, 0, 0], [0, p["b"], -1, 0], [0, 1, p["b"], 0], [0, 0, 0, 0]], 4)],
    lambda p: {(1, 4): {1: p["a"]}, (2, 4): {2: p["b"], 3: -1}, (3, 4): {2: 1, 3: p["b"]}},
)

_row(
    "g4,7", 4, (),
    lambda p: [
        ([[2, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 0]], 4),
        (_G_LOWER_SHIFT, 3),
    ],
    lambda p: {(2, 3): {1: 1}, (1, 4): {1: 2}, (2, 4): {2: 1}, (3, 4): {2: 1, 3: 1}},
    notes=(
        "[e1*,e4*] = 2 e1*: row 1 of the first map is (2,0,0,0), so the pair "
        "bracket puts the coefficient on e1*",
    ),
)

_row(
    "g4,8", 4, (),
    lambda p: [
        ([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 0]], 4),
        (_G_LOWER_SHIFT, 3),
    ],
    lambda p: {(2, 3): {1: 1}, (2, 4): {2: 1}, (3, 4): {3: -1}},
)

_row(
    "g4,9", 4, ("b",),
    lambda p: [
        ([[1 + p["b"], 0, 0, 0], [0, 1, 0, 0], [0, 0, p["b"], 0], [0, 0, 0, 0]], 4),
        (_G_LOWER_SHIFT, 3),
    ],
    lambda p: {(2, 3): {1: 1}, (1, 4): {1: 1 + p["b"]}, (2, 4): {2: 1}, (3, 4): {3: p["b"]}},
)

_row(
    "g4,10", 4, (),
    lambda p: [
        ([[0, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 0]], 4),
        (_G_LOWER_SHIFT, 3),
    ],
    lambda p: {(2, 3): {1: 1}, (2, 4): {3: -1}, (3, 4): {2: 1}},
)

_row(
    "g4,11", 4, ("a",),
    lambda p: [
        ([[2 * p["a"], 0, 0, 0], [0, p["a"], -1, 0], [0, 1, p["a"], 0], [0, 0, 0, 0]], 4),
        (_G_LOWER_SHIFT, 3),
    ],
    lambda p: {
        (2, 3): {1: 1},
        (1, 4): {1: 2 * p["a"]},
        (2, 4): {2: p["a"], 3: -1},
        (3, 4): {2: 1, 3: p["a"]},
    },
)

_row(
    "g4,12", 4, (),
    lambda p: [
        ([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], 4),
        ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], 3),
    ],
    lambda p: {(1, 3): {1: 1}, (2, 3): {2: 1}, (1, 4): {2: -1}, (2, 4): {1: 1}},
)

_ORDER = [f"g3,{k}" for k in range(1, 10)] + [f"g4,{k}" for k in range(1, 13)]
assert set(_ORDER) == set(_ROWS)


def list_catalog() -> List[Tuple[str, Tuple[str, ...]]]:
    """All catalog names in table order with their parameter names."""
    return [(name, _ROWS[name].param_names) for name in _ORDER]


def lookup(name: str, params: Optional[Mapping[str, RationalLike]] = None, **kw: RationalLike) -> CatalogEntry:
    """Instantiate a catalog entry, substituting any required parameters.

    Raises ValueError for an unknown name and for missing or extra
    parameters.  The returned entry is self-checked: the summed bracket of
    its pairs equals the stored commutator tensor exactly.
    """
    row = _ROWS.get(name)
    if row is None:
        known = ", ".join(_ORDER)
        raise ValueError(f"unknown catalog entry {name!r}; known entries: {known}")
    given = {k: as_rational(v) for k, v in {**(params or {}), **kw}.items()}
    missing = [p for p in row.param_names if p not in given]
    extra = [p for p in given if p not in row.param_names]
    if missing:
        raise ValueError(f"{name} requires parameter(s): {', '.join(missing)}")
    if extra:
        raise ValueError(f"{name} does not take parameter(s): {', '.join(sorted(extra))}")

    pairs = tuple(
        AnchoredPair.from_eigenpair(
            RationalMatrix(rows), RationalVector.basis(row.dim, anchor - 1)
        )
        for rows, anchor in row.pairs(given)
    )
    commutators = StructureConstants.from_brackets(
        row.dim,
        {
            (i - 1, j - 1): {k - 1: v for k, v in comps.items()}
            for (i, j), comps in row.brackets(given).items()
        },
    )
    if structure_constants_of_pairs(pairs) != commutators:
        raise AssertionError(f"catalog entry {name} is inconsistent; this is a bug")

    casimir_texts = tuple(row.casimirs(given))
    factor_text = row.factor(given)
    return CatalogEntry(
        name=name,
        dim=row.dim,
        parameters=dict(given),
        pairs=pairs,
        commutators=commutators,
        casimirs=tuple(parse_expr(text, row.dim) for text in casimir_texts),
        casimir_texts=casimir_texts,
        integrating_factor=parse_expr(factor_text, row.dim) if factor_text else None,
        integrating_factor_text=factor_text,
        notes=row.notes,
    )
