"""JSON document format for algebra definitions.

A document carries either a sparse structure-constants listing or a list of
(matrix, eigenvector, eigenvalue) pairs, plus optional invariant candidates.
Indices in the JSON are 1-based to match the usual basis labels e_1..e_n;
rationals travel as strings so that exact data survives the round trip.

Schema (JSON object):
    dim                  positive integer (required)
    structure_constants  list of [i, j, k, rational] with 1 <= i < j <= dim
    pairs                list of {matrix: [[rational, ...], ...],
                                  eigenvector: [rational, ...],
                                  eigenvalue: rational}
    casimirs             optional list of expression strings
    integrating_factor   optional expression string
    name, notes          optional informational strings
Exactly one of structure_constants / pairs must be present; rationals are
strings like "-1/2" (plain JSON integers are also accepted).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import StructureConstants
from .bracket import AnchoredPair, structure_constants_of_pairs
from .catalog import CatalogEntry
from .exact import RationalMatrix, RationalVector


class DocumentError(ValueError):
    """The document violates the schema; message names the offending field."""


@dataclass(frozen=True)
class RawPair:
    """A pair as written in the document, before the eigen relation is checked."""

    matrix: RationalMatrix
    eigenvector: RationalVector
    eigenvalue: Fraction

    def is_valid_eigenpair(self) -> bool:
        return self.matrix.apply(self.eigenvector) == self.eigenvector.scale(self.eigenvalue)

    def to_anchored(self) -> AnchoredPair:
        return AnchoredPair(self.matrix, self.eigenvector, self.eigenvalue)


@dataclass(frozen=True)
class AlgebraDocument:
    dim: int
    structure_constants: Optional[StructureConstants] = None
    pairs: Tuple[RawPair, ...] = ()
    casimirs: Tuple[str, ...] = ()
    integrating_factor: Optional[str] = None
    name: Optional[str] = None
    notes: Tuple[str, ...] = ()

    def anchored_pairs(self) -> Tuple[AnchoredPair, ...]:
        bad = [i for i, p in enumerate(self.pairs) if not p.is_valid_eigenpair()]
        if bad:
            raise DocumentError(
                f"pairs[{bad[0]}]: eigenvector relation F v = lambda v does not hold"
            )
        return tuple(p.to_anchored() for p in self.pairs)

    def tensor(self) -> StructureConstants:
        """Structure constants, either stored directly or read off the pairs."""
        if self.structure_constants is not None:
            return self.structure_constants
        return structure_constants_of_pairs(self.anchored_pairs())


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError(f"{where}: rationals must be strings or integers, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as err:
            raise DocumentError(f"{where}: not a rational: {value!r} ({err})") from None
    raise DocumentError(f"{where}: rationals must be strings or integers, got {value!r}")


def _parse_structure_constants(raw, dim: int) -> StructureConstants:
    if not isinstance(raw, list):
        raise DocumentError("structure_constants: expected a list of [i, j, k, value]")
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for pos, item in enumerate(raw):
        where = f"structure_constants[{pos}]"
        if not (isinstance(item, list) and len(item) == 4):
            raise DocumentError(f"{where}: expected [i, j, k, value]")
        i, j, k, value = item
        for label, idx in (("i", i), ("j", j), ("k", k)):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 1 <= idx <= dim:
                raise DocumentError(f"{where}: index {label}={idx!r} must be in 1..{dim}")
        if not i < j:
            raise DocumentError(f"{where}: only i < j entries are accepted (got i={i}, j={j})")
        comps = brackets.setdefault((i - 1, j - 1), {})
        slot = k - 1
        if slot in comps:
            raise DocumentError(f"{where}: duplicate entry for (i={i}, j={j}, k={k})")
        comps[slot] = _parse_rational(value, where)
    return StructureConstants.from_brackets(dim, brackets)


def _parse_pairs(raw, dim: int) -> Tuple[RawPair, ...]:
    if not isinstance(raw, list) or not raw:
        raise DocumentError("pairs: expected a non-empty list of pair objects")
    pairs = []
    for pos, item in enumerate(raw):
        where = f"pairs[{pos}]"
        if not isinstance(item, dict):
            raise DocumentError(f"{where}: expected an object")
        unknown = set(item) - {"matrix", "eigenvector", "eigenvalue"}
        if unknown:
            raise DocumentError(f"{where}: unknown field(s) {sorted(unknown)}")
        try:
            matrix_rows = item["matrix"]
            vector_entries = item["eigenvector"]
            eigenvalue = item["eigenvalue"]
        except KeyError as err:
            raise DocumentError(f"{where}: missing field {err.args[0]!r}") from None
        if (
            not isinstance(matrix_rows, list)
            or len(matrix_rows) != dim
            or any(not isinstance(r, list) or len(r) != dim for r in matrix_rows)
        ):
            raise DocumentError(f"{where}.matrix: expected a {dim}x{dim} grid")
        if not isinstance(vector_entries, list) or len(vector_entries) != dim:
            raise DocumentError(f"{where}.eigenvector: expected {dim} entries")
        matrix = RationalMatrix(
            [
                [_parse_rational(x, f"{where}.matrix[{r}][{c}]") for c, x in enumerate(row)]
                for r, row in enumerate(matrix_rows)
            ]
        )
        vector = RationalVector(
            [_parse_rational(x, f"{where}.eigenvector[{c}]") for c, x in enumerate(vector_entries)]
        )
        if vector.is_zero():
            raise DocumentError(f"{where}.eigenvector: must be nonzero")
        pairs.append(RawPair(matrix, vector, _parse_rational(eigenvalue, f"{where}.eigenvalue")))
    return tuple(pairs)


_KNOWN_FIELDS = {
    "dim",
    "structure_constants",
    "pairs",
    "casimirs",
    "integrating_factor",
    "name",
    "notes",
}


def document_from_dict(data) -> AlgebraDocument:
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    unknown = set(data) - _KNOWN_FIELDS
    if unknown:
        raise DocumentError(f"unknown field(s): {sorted(unknown)}")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise DocumentError("dim: required positive integer")
    has_sc = "structure_constants" in data
    has_pairs = "pairs" in data
    if has_sc == has_pairs:
        raise DocumentError("exactly one of structure_constants / pairs is required")
    casimirs = data.get("casimirs", [])
    if not isinstance(casimirs, list) or any(not isinstance(c, str) for c in casimirs):
        raise DocumentError("casimirs: expected a list of expression strings")
    factor = data.get("integrating_factor")
    if factor is not None and not isinstance(factor, str):
        raise DocumentError("integrating_factor: expected an expression string")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError("name: expected a string")
    notes = data.get("notes", [])
    if not isinstance(notes, list) or any(not isinstance(x, str) for x in notes):
        raise DocumentError("notes: expected a list of strings")
    return AlgebraDocument(
        dim=dim,
        structure_constants=_parse_structure_constants(data["structure_constants"], dim)
        if has_sc
        else None,
        pairs=_parse_pairs(data["pairs"], dim) if has_pairs else (),
        casimirs=tuple(casimirs),
        integrating_factor=factor,
        name=name,
        notes=tuple(notes),
    )


def loads(text: str) -> AlgebraDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"invalid JSON: {err}") from None
    return document_from_dict(data)


def _rational_str(q: Fraction) -> str:
    return str(q)


def tensor_to_entries(sc: StructureConstants) -> List[List]:
    """Sparse 1-based [i, j, k, value] listing of the nonzero i < j entries."""
    return [[i + 1, j + 1, k + 1, _rational_str(v)] for i, j, k, v in sc.nonzero_entries()]


def document_to_dict(doc: AlgebraDocument) -> Dict:
    out: Dict = {"dim": doc.dim}
    if doc.name is not None:
        out["name"] = doc.name
    if doc.structure_constants is not None:
        out["structure_constants"] = tensor_to_entries(doc.structure_constants)
    if doc.pairs:
        out["pairs"] = [
            {
                "matrix": [[_rational_str(x) for x in row] for row in p.matrix.rows],
                "eigenvector": [_rational_str(x) for x in p.eigenvector],
                "eigenvalue": _rational_str(p.eigenvalue),
            }
            for p in doc.pairs
        ]
    if doc.casimirs:
        out["casimirs"] = list(doc.casimirs)
    if doc.integrating_factor is not None:
        out["integrating_factor"] = doc.integrating_factor
    if doc.notes:
        out["notes"] = list(doc.notes)
    return out


def document_from_pairs(
    pairs: Sequence[AnchoredPair],
    name: Optional[str] = None,
    casimirs: Sequence[str] = (),
    integrating_factor: Optional[str] = None,
    notes: Sequence[str] = (),
) -> AlgebraDocument:
    return AlgebraDocument(
        dim=pairs[0].dim,
        pairs=tuple(RawPair(p.matrix, p.eigenvector, p.eigenvalue) for p in pairs),
        casimirs=tuple(casimirs),
        integrating_factor=integrating_factor,
        name=name,
        notes=tuple(notes),
    )


def document_from_entry(entry: CatalogEntry) -> AlgebraDocument:
    suffix = (
        "(" + ", ".join(f"{k}={v}" for k, v in sorted(entry.parameters.items())) + ")"
        if entry.parameters
        else ""
    )
    return document_from_pairs(
        entry.pairs,
        name=entry.name + suffix,
        casimirs=entry.casimir_texts,
        integrating_factor=entry.integrating_factor_text,
        notes=entry.notes,
    )
