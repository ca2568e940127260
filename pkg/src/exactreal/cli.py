"""Command-line entry point: ``exactreal eval | sqrt | selftest``.

Exit codes: 0 success, 1 bad arguments or syntax, 2 precision budget
exhausted, 3 positivity certificate failed, 4 selftest found a violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import selftest
from .errors import BudgetExhausted, CertificateError
from .expr import ParseError, evaluate, parse
from .newton import sqrt_table
from .numerics import format_rational, parse_rational, to_decimal_string
from .reals import default_budget, refine

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CERT, EXIT_SELFTEST = 0, 1, 2, 3, 4

CSV_COLUMNS = ["iteration", "lower", "upper", "width", "width_decimal", "modulus", "modulus_decimal"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _natural(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="exactreal", description="Exact real arithmetic with guaranteed enclosures.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="enclose the value of an expression")
    e.add_argument("expression")
    e.add_argument("--bits", type=_natural, default=30, help="enclosure width at most 2^-bits (default 30)")
    e.add_argument("--budget", type=_natural, default=None, help="search budget (default 4*bits + 64)")

    s = sub.add_parser("sqrt", help="Newton enclosures of sqrt(q), width against modulus bound")
    s.add_argument("q")
    s.add_argument("--iters", type=_natural, default=5)
    s.add_argument("--format", choices=("text", "csv", "json"), default="text")

    t = sub.add_parser("selftest", help="randomized law checks")
    t.add_argument("--cases", type=_natural, default=100)
    t.add_argument("--seed", type=int, default=0)
    return p


def _decimal_digits(k: int) -> int:
    return max(3, math.ceil(k * math.log10(2)) + 2)


def cmd_eval(args, out) -> int:
    try:
        node = parse(args.expression)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    k = args.bits
    budget = default_budget(k) if args.budget is None else args.budget
    try:
        v = refine(evaluate(node, budget), k, budget)
    except CertificateError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERT
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    digits = _decimal_digits(k)
    print(f"[{format_rational(v.lo)}, {format_rational(v.hi)}]", file=out)
    print(f"≈ [{to_decimal_string(v.lo, digits)}, {to_decimal_string(v.hi, digits)}]", file=out)
    width = v.hi - v.lo
    shown = "0" if width == 0 else to_decimal_string(width, 2, scientific=True)
    print(f"width {shown} <= 2^-{k}", file=out)
    return EXIT_OK


def cmd_sqrt(args, out) -> int:
    try:
        q = parse_rational(args.q)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"bad rational: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if q <= 0:
        print(f"sqrt needs a positive rational, got {format_rational(q)}", file=sys.stderr)
        return EXIT_USAGE
    rows = sqrt_table(q, args.iters)
    if args.format == "json":
        json.dump([r.as_strings() for r in rows], out, indent=2)
        print(file=out)
    elif args.format == "csv":
        w = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r.as_strings())
    else:
        print(f"{'n':>2}  {'interval width':>14}  {'modulus bound':>13}", file=out)
        for r in rows:
            print(f"{r.iteration:>2}  {r.width_decimal:>14}  {r.modulus_decimal:>13}", file=out)
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    failures = selftest.run(args.cases, args.seed, out)
    return EXIT_SELFTEST if failures else EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    handler = {"eval": cmd_eval, "sqrt": cmd_sqrt, "selftest": cmd_selftest}[args.command]
    return handler(args, out)


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
