"""Command line front-end; every computation delegates to the library.

Exit codes: 0 success, 1 unreadable input, 2 schema mismatch or usage error,
3 domain error, 4 audit violations (suppressed by --no-fail).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import audit as audit_suites
from .classical import (
    ProbVector,
    entropy_finite,
    entropy_sequence,
    majorizes,
    sequence_from_spec,
)
from .fileio import SchemaError, parse_state, read_density, read_model, read_vector
from .functionals import BUILTIN_FAMILIES, functional_from_spec, validate_functional
from .gpt import gpt_entropy
from .quantum import quantum_entropy

EXIT_OK = 0
EXIT_IO = 1
EXIT_SCHEMA = 2
EXIT_DOMAIN = 3
EXIT_VIOLATIONS = 4

JSON_DIGITS = 12
TABLE_DIGITS = 6

_CASE_RULES = {
    "shannon": "increasing_concave",
    "renyi": "increasing_concave for alpha < 1, decreasing_convex for alpha > 1",
    "tsallis": "increasing_concave",
    "kaniadakis": "increasing_concave",
}


def _round_floats(obj):
    """Round floats to 12 significant digits; non-finite values to strings."""
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return float(f"{obj:.{JSON_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _cell(value, digits):
    if isinstance(value, float):
        if math.isinf(value) or math.isnan(value):
            return str(value)
        return f"{value:.{digits}g}"
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(_round_floats(value), sort_keys=True, separators=(",", ":"))
    return str(value)


def _emit(records, fmt):
    """Write records (a list of flat dicts) as JSON lines, CSV, or a table."""
    if fmt == "json":
        for record in records:
            line = json.dumps(
                _round_floats(record), sort_keys=True, separators=(",", ":"), ensure_ascii=False
            )
            sys.stdout.write(line + "\n")
    elif fmt == "csv":
        keys = sorted({k for record in records for k in record})
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(keys)
        for record in records:
            writer.writerow(_cell(record.get(k, ""), JSON_DIGITS) for k in keys)
    else:
        for record in records:
            for key, value in record.items():
                sys.stdout.write(f"{key}: {_cell(value, TABLE_DIGITS)}\n")
            sys.stdout.write("\n")


def _parse_dims(text: str):
    lo, sep, hi = text.partition(":")
    try:
        if sep:
            return int(lo), int(hi)
        return int(lo), int(lo)
    except ValueError:
        raise ValueError(f"dims must look like '6' or '3:6', got {text!r}") from None


def cmd_entropy(args) -> int:
    F = functional_from_spec(args.functional)
    if args.kind == "classical":
        if args.sequence:
            src = sequence_from_spec(args.sequence)
            result = entropy_sequence(
                src, F, max_terms=args.max_terms, increment_tol=args.increment_tol
            )
            record = {"kind": "classical", "input": src.name}
        else:
            if not args.input:
                raise SchemaError("classical entropy needs an input file or --sequence")
            p = ProbVector(read_vector(args.input), renormalize=args.renormalize)
            result = entropy_finite(p, F)
            record = {"kind": "classical", "input": args.input}
        record.update(
            functional=F.name,
            value=result.value,
            status=result.status.value,
            terms_used=result.terms_used,
            increment_at_stop=result.increment_at_stop,
        )
    elif args.kind == "quantum":
        if not args.input:
            raise SchemaError("quantum entropy needs a density-matrix file")
        rho = read_density(args.input)
        result = quantum_entropy(rho, F)
        record = {
            "kind": "quantum",
            "input": args.input,
            "dim": rho.dim,
            "functional": F.name,
            "value": result.value,
            "status": result.status.value,
            "terms_used": result.terms_used,
            "increment_at_stop": result.increment_at_stop,
        }
    else:
        if not args.input:
            raise SchemaError("gpt entropy needs a model file")
        if args.state is None and args.state_file is None:
            raise SchemaError("gpt entropy needs --state or --state-file")
        model = read_model(args.input)
        text = args.state
        if text is None:
            with open(args.state_file, "r", encoding="utf-8") as fh:
                text = fh.read()
        x = parse_state(text)
        value, dec = gpt_entropy(model, x, F)
        record = {
            "kind": "gpt",
            "input": args.input,
            "state": [float(v) for v in x],
            "functional": F.name,
            "value": value,
            "status": "exact" if dec is not None else "outside_hull",
            "decomposition": (
                {
                    "support": list(dec.support),
                    "weights": [float(w) for w in dec.weights],
                }
                if dec is not None
                else None
            ),
        }
    _emit([record], args.format)
    return EXIT_OK


def cmd_majorize(args) -> int:
    p = read_vector(args.p_file)
    q = read_vector(args.q_file)
    q_under_p = majorizes(p, q)
    p_under_q = majorizes(q, p)
    if q_under_p and p_under_q:
        verdict = "both"
    elif q_under_p:
        verdict = "q ⪯ p"
    elif p_under_q:
        verdict = "p ⪯ q"
    else:
        verdict = "incomparable"
    _emit(
        [
            {
                "p": args.p_file,
                "q": args.q_file,
                "q_majorized_by_p": q_under_p,
                "p_majorized_by_q": p_under_q,
                "verdict": verdict,
            }
        ],
        args.format,
    )
    return EXIT_OK


def cmd_audit(args) -> int:
    dims = _parse_dims(args.dims) if args.dims else None
    report = audit_suites.run_audit(
        args.suite,
        trials=args.trials,
        seed=args.seed,
        dims=dims,
        functional_specs=args.functional or None,
    )
    if args.format == "json":
        records = [dict(record="case", **c.to_dict()) for c in report.cases]
        records.append(dict(record="summary", **report.summary_dict()))
        _emit(records, "json")
    elif args.format == "csv":
        _emit([report.summary_dict()], "csv")
    else:
        _emit([report.summary_dict()], "table")
    if report.violations and not args.no_fail:
        return EXIT_VIOLATIONS
    return EXIT_OK


def cmd_functional(args) -> int:
    if args.action == "list":
        records = []
        for name in sorted(BUILTIN_FAMILIES):
            entry = BUILTIN_FAMILIES[name]
            records.append(
                {
                    "family": name,
                    "params": ",".join(entry["params"]) or "none",
                    "constraint": entry["constraint"],
                    "case": _CASE_RULES[name],
                }
            )
        _emit(records, args.format)
        return EXIT_OK
    if not args.spec:
        raise SchemaError("functional validate needs a spec, e.g. renyi:alpha=2")
    F = functional_from_spec(args.spec)
    report = validate_functional(F, grid_size=args.grid_size)
    if args.format == "csv":
        records = [
            {"functional": report.functional, "check": c.name, "passed": c.passed, "margin": c.margin}
            for c in report.checks
        ]
        _emit(records, "csv")
    else:
        _emit([report.to_dict()], args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrokit",
        description="Generalized entropies over classical, quantum, and convex models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("entropy", help="entropy of a distribution, density matrix, or model state")
    pe.add_argument("input", nargs="?", help="input file (optional with --sequence)")
    pe.add_argument("--kind", required=True, choices=["classical", "quantum", "gpt"])
    pe.add_argument("--functional", default="shannon", help="e.g. shannon or renyi:alpha=2")
    pe.add_argument("--sequence", help="sequence family spec, e.g. geometric:r=0.5")
    pe.add_argument("--max-terms", type=int, default=10_000)
    pe.add_argument("--increment-tol", type=float, default=1e-12)
    pe.add_argument("--state", help="gpt state as an inline JSON array")
    pe.add_argument("--state-file", help="gpt state file containing a JSON array")
    pe.add_argument("--renormalize", action="store_true", help="rescale classical input to sum 1")
    pe.add_argument("--format", choices=["json", "csv", "table"], default="table")
    pe.set_defaults(func=cmd_entropy)

    pm = sub.add_parser("majorize", help="compare two vectors in the majorization order")
    pm.add_argument("p_file")
    pm.add_argument("q_file")
    pm.add_argument("--format", choices=["json", "csv", "table"], default="table")
    pm.set_defaults(func=cmd_majorize)

    pa = sub.add_parser("audit", help="run a randomized inequality audit suite")
    pa.add_argument("suite", choices=sorted(audit_suites.SUITES))
    pa.add_argument("--trials", type=int, default=None)
    pa.add_argument("--seed", type=int, default=7)
    pa.add_argument("--dims", help="dimension or range, e.g. 6 or 3:6")
    pa.add_argument(
        "--functional",
        action="append",
        help="functional spec; repeat for several (default: built-in set)",
    )
    pa.add_argument("--no-fail", action="store_true", help="exit 0 even with violations")
    pa.add_argument("--format", choices=["json", "csv", "table"], default="table")
    pa.set_defaults(func=cmd_audit)

    pf = sub.add_parser("functional", help="list built-in families or validate a pair")
    pf.add_argument("action", choices=["list", "validate"])
    pf.add_argument("spec", nargs="?", help="functional spec for validate")
    pf.add_argument("--grid-size", type=int, default=1001)
    pf.add_argument("--format", choices=["json", "csv", "table"], default="table")
    pf.set_defaults(func=cmd_functional)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ValueError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
