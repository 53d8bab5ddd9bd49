"""Command-line front end: generate, roots, check and table."""
import argparse
import json
import logging
import random
import sys
from typing import Optional, Sequence

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from pmnstools.classes import DEFAULT_COEFF_CAP
from pmnstools.errors import PmnsError, RecordError
from pmnstools.generate import CLASS_FAMILIES, SWEEP_FAMILY, GenerationRequest, cmd_generate
from pmnstools.json_import import RecordFile, record_to_basis, write_records
from pmnstools.lattice import Strategy
from pmnstools.modint import ModCtx, require_prime
from pmnstools.pmns import check_homomorphism, example_basis
from pmnstools.poly import IntPoly
from pmnstools.reports.tables import SystemTables
from pmnstools.roots import root_report

logger = logging.getLogger(__name__)

TRANSFORMS = standard_transformations + (convert_xor,)


def parse_int(text: str) -> int:
    """Decimal integer or an integer expression such as 2^256*3^157*115+1."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = parse_expr(text, transformations=TRANSFORMS, evaluate=True)
    except Exception as e:
        raise RecordError(f"Cannot parse integer '{text}'") from e
    if not isinstance(value, sympy.Integer):
        raise RecordError(f"'{text}' is not an integer")
    return int(value)


def parse_poly(text: str) -> IntPoly:
    """Ascending comma-separated coefficients, or an expression in X."""
    if "X" not in text and "x" not in text:
        try:
            return IntPoly(tuple(int(c) for c in text.split(",")))
        except ValueError as e:
            raise RecordError(f"Cannot parse coefficients '{text}'") from e
    x = sympy.Symbol("X")
    try:
        expr = parse_expr(text.replace("x", "X"), local_dict={"X": x}, transformations=TRANSFORMS)
        coeffs = sympy.Poly(expr, x).all_coeffs()
    except Exception as e:
        raise RecordError(f"Cannot parse polynomial '{text}'") from e
    if not all(c.is_integer for c in coeffs):
        raise RecordError(f"Polynomial '{text}' has non-integer coefficients")
    return IntPoly(tuple(int(c) for c in reversed(coeffs)))


def _split_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _emit(payload, output: str, text: str):
    if output == "text":
        print(text)
    else:
        print(json.dumps(payload))


# --- Commands ------------------------------------------------------------------

def run_generate(args) -> int:
    classes = tuple(_split_list(args.classes)) if args.classes else CLASS_FAMILIES
    try:
        strategies = tuple(Strategy(s) for s in _split_list(args.strategies)) if args.strategies else None
    except ValueError as e:
        raise RecordError(f"Unknown strategy in '{args.strategies}'") from e
    req = GenerationRequest(
        p=parse_int(args.prime),
        n=args.degree,
        classes=classes,
        coeff_cap=args.coeff_cap,
        const_cap=args.const_cap,
        rho_max_bits=args.rho_max_bits,
        seed=args.seed,
        jobs=args.jobs,
        **({"strategies": strategies} if strategies else {}),
    )
    records = cmd_generate(req)
    if args.out:
        write_records(records, args.out)
        logger.info(f"wrote {len(records)} records to {args.out}")
        return 0
    for r in records:
        _emit(r.to_dict(), args.output,
              f"rho_bits={r.rho_bits} gamma={r.gamma} E={IntPoly(r.E_coeffs)} "
              f"strategy={r.strategy} class={r.class_tag}")
    return 0


def run_roots(args) -> int:
    p = require_prime(parse_int(args.prime))
    e = parse_poly(args.poly)
    report = root_report(e, ModCtx(p), extract=not args.count_only, seed=args.seed)
    payload = {
        "p": str(p),
        "E": str(e),
        "count": report.count,
        "method": report.method.value,
        "roots": [str(g) for g in report.roots],
    }
    roots = " ".join(payload["roots"])
    _emit(payload, args.output, f"{report.count} roots ({report.method.value}) {roots}".rstrip())
    return 0


def run_check(args) -> int:
    records = RecordFile(args.records).get_records()
    indices = range(len(records)) if args.index is None else [args.index]
    rng = random.Random(args.seed)
    for i in indices:
        if not 0 <= i < len(records):
            raise RecordError(f"Record index {i} out of range")
        try:
            basis = record_to_basis(records[i])
            check_homomorphism(basis, args.trials, rng)
        except PmnsError as e:
            _emit({"index": i, "status": "fail", "invariant": type(e).__name__, "detail": str(e)},
                  args.output, f"record {i}: FAIL {type(e).__name__}: {e}")
            return 1
        _emit({"index": i, "status": "pass", "trials": args.trials},
              args.output, f"record {i}: pass ({args.trials} trials)")
    return 0


def run_table(args) -> int:
    basis, table_rho = example_basis(args.example)
    tables = SystemTables(basis, table_rho)
    if args.output == "json":
        df = tables.representation_table()
        for _, row in df.iterrows():
            print(json.dumps({"residue": int(row["Residue"]),
                              "representations": [list(r) for r in row["Representations"]]}))
    else:
        print(f"p={basis.p} n={basis.n} gamma={basis.gamma} E={basis.e} rho={table_rho}")
        print(tables.text_table())
    return 0


# --- Parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pmnstools", description="Polynomial modular number systems")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="INFO, or DEBUG when repeated")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p: argparse.ArgumentParser, default: str):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--json", dest="output", action="store_const", const="json")
        group.add_argument("--text", dest="output", action="store_const", const="text")
        p.set_defaults(output=default)

    gen = sub.add_parser("generate", help="enumerate reduction polynomials and build every PMNS")
    gen.add_argument("--prime", required=True)
    gen.add_argument("--degree", type=int, required=True)
    gen.add_argument("--classes", help=f"comma list of {', '.join(CLASS_FAMILIES + (SWEEP_FAMILY,))}")
    gen.add_argument("--coeff-cap", type=int, default=DEFAULT_COEFF_CAP)
    gen.add_argument("--const-cap", type=int, default=None)
    gen.add_argument("--rho-max-bits", type=int, default=None)
    gen.add_argument("--strategies", help=f"comma list of {', '.join(s.value for s in Strategy)}")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--jobs", type=int, default=1)
    gen.add_argument("--out", help="write JSON Lines to this file")
    output_flags(gen, "json")
    gen.set_defaults(func=run_generate)

    roots = sub.add_parser("roots", help="roots of E modulo p")
    roots.add_argument("--prime", required=True)
    roots.add_argument("--poly", required=True)
    roots.add_argument("--seed", type=int, default=0)
    roots.add_argument("--count-only", action="store_true")
    output_flags(roots, "json")
    roots.set_defaults(func=run_roots)

    check = sub.add_parser("check", help="re-validate records and test their arithmetic")
    check.add_argument("records")
    check.add_argument("--index", type=int, default=None)
    check.add_argument("--trials", type=int, default=100)
    check.add_argument("--seed", type=int, default=0)
    output_flags(check, "json")
    check.set_defaults(func=run_check)

    table = sub.add_parser("table", help="representation table of a worked example")
    table.add_argument("example", help="ex1a or ex1b")
    output_flags(table, "text")
    table.set_defaults(func=run_table)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except RecordError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (PmnsError, FileNotFoundError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
