"""Command-line front end.

Subcommands read an algebra document (JSON file, or '-' for stdin), run the
requested analysis, and print a JSON report to stdout with a one-line
summary on stderr.  Exit codes: 0 when every check passed, 1 when some
check failed, 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict
from fractions import Fraction
from typing import List, Optional

from . import catalog as catalog_mod
from .algebra import (
    derived_series,
    is_nilpotent,
    is_solvable,
    jacobi_check,
    lower_central_series,
)
from .bracket import (
    DegenerateCase2,
    Eigenvector,
    NotLie,
    compatibility_defect,
    corollary1_check,
    remark1_classify,
)
from .casimir import (
    DEFAULT_SEED,
    ExprDomainError,
    ExprSyntaxError,
    SampleConfig,
    gradient,
    integrating_factor_check,
    parse_expr,
    verify_casimir,
)
from .decompose import decompose as decompose_tensor
from .decompose import reconstruct
from .document import (
    AlgebraDocument,
    DocumentError,
    document_from_entry,
    document_from_pairs,
    document_to_dict,
    loads,
    tensor_to_entries,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _read_document(path: str) -> AlgebraDocument:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as err:
            raise DocumentError(f"cannot read {path}: {err}") from None
    return loads(text)


def _emit(report: dict, summary: str) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))
    print(summary, file=sys.stderr)


def _vector_strs(vec) -> List[str]:
    return [str(x) for x in vec]


def _violations_json(violations) -> List[dict]:
    return [
        {"triple": [i + 1 for i in v.triple], "residual": _vector_strs(v.residual)}
        for v in violations
    ]


def _defect_json(defect) -> List[dict]:
    return [
        {"triple": [i + 1 for i in triple], "value": _vector_strs(cov)}
        for triple, cov in sorted(defect.values.items())
    ]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_check(args) -> int:
    doc = _read_document(args.file)
    report: dict = {"command": "check", "dim": doc.dim}
    if doc.name:
        report["name"] = doc.name
    ok = True
    if doc.pairs:
        pair_reports = []
        for index, pair in enumerate(doc.pairs):
            valid = pair.is_valid_eigenpair()
            classification = remark1_classify(pair.matrix, pair.eigenvector)
            if isinstance(classification, Eigenvector):
                kind = "eigenvector"
            elif isinstance(classification, DegenerateCase2):
                kind = "lie_without_eigenvector"
            else:
                kind = "not_lie"
            defect_zero = not isinstance(classification, NotLie)
            pair_reports.append(
                {
                    "index": index,
                    "eigenvalue": str(pair.eigenvalue),
                    "eigenpair_valid": valid,
                    "jacobi_defect_zero": defect_zero,
                    "classification": kind,
                }
            )
            ok = ok and valid
        report["pairs"] = pair_reports
        if ok:
            tensor = doc.tensor()
        else:
            tensor = None
    else:
        tensor = doc.tensor()
    if tensor is not None:
        violations = jacobi_check(tensor)
        report["jacobi_violations"] = _violations_json(violations)
        ok = ok and not violations
    report["ok"] = ok
    _emit(report, f"check: {'OK' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_series(args) -> int:
    doc = _read_document(args.file)
    tensor = doc.tensor()
    violations = jacobi_check(tensor)
    if violations:
        report = {
            "command": "series",
            "dim": doc.dim,
            "ok": False,
            "jacobi_violations": _violations_json(violations),
        }
        _emit(report, "series: FAILED (tensor is not a Lie algebra)")
        return EXIT_CHECK_FAILED

    def subspaces_json(series):
        return [
            {"rank": sub.rank, "basis": [_vector_strs(v) for v in sub.basis]}
            for sub in series
        ]

    derived = derived_series(tensor)
    lower = lower_central_series(tensor)
    report = {
        "command": "series",
        "dim": doc.dim,
        "derived_series": subspaces_json(derived),
        "lower_central_series": subspaces_json(lower),
        "solvable": derived[-1].is_zero(),
        "nilpotent": lower[-1].is_zero(),
        "ok": True,
    }
    if doc.name:
        report["name"] = doc.name
    _emit(
        report,
        "series: solvable={} nilpotent={} (derived ranks {}, lower central ranks {})".format(
            report["solvable"],
            report["nilpotent"],
            [s.rank for s in derived],
            [s.rank for s in lower],
        ),
    )
    return EXIT_OK


def _cmd_decompose(args) -> int:
    doc = _read_document(args.file)
    tensor = doc.tensor()
    violations = jacobi_check(tensor)
    if violations:
        report = {
            "command": "decompose",
            "ok": False,
            "jacobi_violations": _violations_json(violations),
        }
        _emit(report, "decompose: FAILED (tensor is not a Lie algebra)")
        return EXIT_CHECK_FAILED
    decomposition = decompose_tensor(tensor)
    out_doc = document_from_pairs(
        decomposition.pairs,
        name=(doc.name + " (decomposed)") if doc.name else None,
    )
    report = document_to_dict(out_doc)
    if args.verify:
        round_trip = reconstruct(decomposition)
        verified = round_trip == tensor
        report["verified"] = verified
        if not verified:
            report["reconstructed"] = tensor_to_entries(round_trip)
            _emit(report, "decompose: FAILED (round trip mismatch)")
            return EXIT_CHECK_FAILED
    _emit(report, f"decompose: emitted {len(decomposition.pairs)} pairs")
    return EXIT_OK


def _parse_box(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise DocumentError("--box expects 'lo,hi'")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise DocumentError(f"--box expects numbers, got {text!r}") from None
    if not lo < hi:
        raise DocumentError("--box requires lo < hi")
    return lo, hi


def _default_seed() -> int:
    raw = os.environ.get("LIE_FORGE_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise DocumentError(f"LIE_FORGE_SEED must be an integer, got {raw!r}") from None


def _report_dict(report) -> dict:
    data = asdict(report)
    data["failures"] = list(data["failures"])
    data["verdict"] = report.verdict
    return data


def _cmd_casimir(args) -> int:
    doc = _read_document(args.file)
    tensor = doc.tensor()
    seed = args.seed if args.seed is not None else _default_seed()
    config = SampleConfig(
        samples=args.samples,
        tolerance=args.tol,
        seed=seed,
        box=_parse_box(args.box),
    )
    reports = []
    ok = True
    for text in doc.casimirs:
        candidate = parse_expr(text, doc.dim)
        result = verify_casimir(tensor, candidate, config)
        reports.append(_report_dict(result))
        ok = ok and result.passed
    report = {
        "command": "casimir",
        "dim": doc.dim,
        "seed": seed,
        "samples": args.samples,
        "tolerance": args.tol,
        "reports": reports,
    }
    if doc.name:
        report["name"] = doc.name
    if not doc.casimirs:
        report["note"] = "document lists no casimirs"
    if doc.integrating_factor and doc.pairs and doc.dim == 3:
        factor_report, factor_ok = _factor_report(doc, config)
        report["integrating_factor"] = factor_report
        ok = ok and factor_ok
    report["ok"] = ok
    _emit(report, f"casimir: {'OK' if ok else 'FAILED'} ({len(reports)} candidate(s))")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _factor_report(doc: AlgebraDocument, config: SampleConfig):
    factor = parse_expr(doc.integrating_factor, doc.dim)
    candidates = [parse_expr(text, doc.dim) for text in doc.casimirs]
    pairs = doc.anchored_pairs()
    rng = random.Random(config.seed)
    lo, hi = config.box
    worst = 0.0
    evaluated = 0
    resamples = 0
    while evaluated < config.samples and resamples <= config.max_resamples:
        point = tuple(lo + (hi - lo) * rng.random() for _ in range(doc.dim))
        try:
            for candidate in candidates:
                residual = integrating_factor_check(pairs, candidate, factor, point)
                scale = max(abs(g) for g in gradient(candidate, point))
                worst = max(worst, max(abs(r) for r in residual) / (1.0 + scale))
        except ExprDomainError:
            resamples += 1
            continue
        evaluated += 1
    passed = evaluated == config.samples and worst <= config.tolerance
    return (
        {
            "factor": doc.integrating_factor,
            "max_normalized_residual": worst,
            "evaluated": evaluated,
            "passed": passed,
        },
        passed,
    )


def _cmd_compat(args) -> int:
    doc = _read_document(args.file)
    if not doc.pairs:
        raise DocumentError("compat requires a document with pairs")
    pairs = doc.anchored_pairs()
    results = []
    ok = True
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            defect = compatibility_defect(pairs[i], pairs[j])
            zero = defect.is_zero()
            results.append(
                {
                    "pair_indices": [i, j],
                    "defect_zero": zero,
                    "defect": _defect_json(defect),
                    "corollary1": corollary1_check(pairs[i], pairs[j]),
                }
            )
            ok = ok and zero
    report = {"command": "compat", "dim": doc.dim, "couples": results, "ok": ok}
    if doc.name:
        report["name"] = doc.name
    if len(pairs) < 2:
        report["note"] = "single pair; nothing to compare"
    _emit(report, f"compat: {'OK' if ok else 'FAILED'} ({len(results)} couple(s))")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _parse_params(items):
    params = {}
    for item in items or []:
        if "=" not in item:
            raise DocumentError(f"--param expects name=value, got {item!r}")
        key, _, value = item.partition("=")
        key = key.strip()
        try:
            params[key] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"--param {key}: not a rational: {value!r}") from None
    return params


def _cmd_catalog(args) -> int:
    if args.action == "list":
        listing = [
            {"name": name, "parameters": list(param_names)}
            for name, param_names in catalog_mod.list_catalog()
        ]
        _emit({"command": "catalog", "entries": listing}, f"catalog: {len(listing)} entries")
        return EXIT_OK
    # show
    if not args.name:
        raise DocumentError("catalog show requires an entry name")
    try:
        entry = catalog_mod.lookup(args.name, _parse_params(args.param))
    except ValueError as err:
        raise DocumentError(str(err)) from None
    doc = document_from_entry(entry)
    _emit(document_to_dict(doc), f"catalog: {entry.name}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lie-forge",
        description="Construct, analyze and verify Lie algebras presented by "
        "structure constants or by linear maps with eigenvectors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate eigenpairs and the Jacobi identity")
    p_check.add_argument("file", help="algebra document (JSON), or - for stdin")
    p_check.set_defaults(func=_cmd_check)

    p_series = sub.add_parser("series", help="derived and lower central series")
    p_series.add_argument("file")
    p_series.set_defaults(func=_cmd_series)

    p_dec = sub.add_parser("decompose", help="split a tensor into anchored pairs")
    p_dec.add_argument("file")
    p_dec.add_argument("--verify", action="store_true", help="round-trip the result")
    p_dec.set_defaults(func=_cmd_decompose)

    p_cas = sub.add_parser("casimir", help="verify the listed invariant candidates")
    p_cas.add_argument("file")
    p_cas.add_argument("--samples", type=int, default=100)
    p_cas.add_argument("--tol", type=float, default=1e-9)
    p_cas.add_argument("--seed", type=int, default=None, help="defaults to LIE_FORGE_SEED")
    p_cas.add_argument("--box", default="0.5,2", help="sampling box lo,hi")
    p_cas.set_defaults(func=_cmd_casimir)

    p_compat = sub.add_parser("compat", help="pairwise compatibility of the listed pairs")
    p_compat.add_argument("file")
    p_compat.set_defaults(func=_cmd_compat)

    p_cat = sub.add_parser("catalog", help="query the embedded algebra catalog")
    p_cat.add_argument("action", choices=["list", "show"])
    p_cat.add_argument("name", nargs="?", help="entry name for show, e.g. g3,8")
    p_cat.add_argument("--param", action="append", help="parameter, e.g. a=1/2")
    p_cat.set_defaults(func=_cmd_catalog)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, ExprSyntaxError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ExprDomainError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
