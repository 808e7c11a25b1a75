"""Command-line front end (``gross``).

Exit status: 0 on success, 1 on evaluation or domain errors, 2 on usage or
expression syntax errors. ``GROSS_FORMAT`` (``table`` or ``json``) sets the
default output format.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import IO, Sequence

from . import core
from .deriv import (
    BASELINES,
    H_GRID,
    MAX_ORDER,
    differentiate,
    evaluate_at,
    minimal_root_scan,
)
from .errors import GrossError, ParseError
from .expr import ComplexDomain, RealDomain, evaluate, parse

GRAMMAR = """\
expression grammar:
  expr    := term (('+' | '-') term)*
  term    := factor (('*' | '/') factor)*
  factor  := '-' factor | primary ('^' signed_number)?
  primary := number | 'x' | ident '(' expr ')' | '(' expr ')'
  ident   := sin | cos | exp | ln | sqrt
"""

HUMAN_DIGITS = 6
MACHINE_DIGITS = 17


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n\n{GRAMMAR}")


# -- JSON with fixed number formatting ---------------------------------------


def dumps(obj) -> str:
    """Compact JSON; floats get 17 significant digits, non-finite become null."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return core.format_digit(obj, MACHINE_DIGITS) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _h(v: float) -> str:
    return core.format_digit(v, HUMAN_DIGITS)


def _label(j: int) -> str:
    return "f" + "'" * j if j <= 3 else f"f^({j})"


# -- argument handling -----------------------------------------------------------


def _floats(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not vals or not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"expected finite numbers, got {text!r}")
    return vals


def _steps(text: str) -> list[float]:
    vals = _floats(text)
    if not all(v > 0 for v in vals):
        raise argparse.ArgumentTypeError(f"step sizes must be positive, got {text!r}")
    return vals


def _float(text: str) -> float:
    vals = _floats(text)
    if len(vals) != 1:
        raise argparse.ArgumentTypeError(f"expected a single number, got {text!r}")
    return vals[0]


def _order(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must be an integer, got {text!r}")
    if not 0 <= k <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must be in 0..{MAX_ORDER}, got {k}")
    return k


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get("GROSS_FORMAT", "table")
    if default_format not in ("table", "json"):
        default_format = "table"

    parser = _Parser(
        prog="gross",
        description="Exact derivatives from one evaluation at y + 1/grossone.",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("expression", nargs="?", help="expression in x (same as --expr)")
        src = p.add_mutually_exclusive_group()
        src.add_argument("--expr", help="expression in x")
        src.add_argument("--expr-file", help="file holding one expression (UTF-8)")
        p.add_argument("--format", choices=("table", "json"), default=default_format)

    p = sub.add_parser("diff", help="value and derivatives up to --order")
    common(p)
    p.add_argument("--at", type=_floats, required=True, help="point(s), comma separated")
    p.add_argument("--order", type=_order, default=3)

    p = sub.add_parser("eval", help="evaluate in one numeric domain")
    common(p)
    p.add_argument("--at", type=_float, required=True)
    p.add_argument("--domain", choices=("real", "gross", "complex"), default="real")
    p.add_argument("--order", type=_order, default=3, help="floor for the gross domain")

    p = sub.add_parser("coeffs", help="raw numeral of f(y + 1/grossone)")
    common(p)
    p.add_argument("--at", type=_floats, required=True)
    p.add_argument("--order", type=_order, default=3)

    p = sub.add_parser("compare", help="grossone derivative vs finite differences and complex step")
    common(p)
    p.add_argument("--at", type=_float, required=True)
    p.add_argument("--h-grid", type=_steps, default=list(H_GRID))

    p = sub.add_parser("root", help="minimal root on [a, b] by scan plus Newton")
    common(p)
    p.add_argument("--a", type=_float, required=True)
    p.add_argument("--b", type=_float, required=True)
    p.add_argument("--grid-n", type=int, default=100)
    p.add_argument("--tol", type=_float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=200)
    return parser


def _load_expr(args, parser: argparse.ArgumentParser):
    given = [v for v in (args.expression, args.expr, args.expr_file) if v is not None]
    if len(given) != 1:
        raise UsageError(
            f"{parser.format_usage()}gross {args.command}: error: "
            f"give exactly one of EXPRESSION, --expr, --expr-file\n\n{GRAMMAR}"
        )
    if args.expr_file is None:
        return parse(given[0])
    try:
        with open(args.expr_file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read expression file: {exc}\n") from None
    return parse(text.strip())


# -- commands ------------------------------------------------------------------


def cmd_diff(e, args, out: IO[str]) -> None:
    results = [differentiate(e, y, args.order) for y in args.at]
    if args.format == "json":
        for r in results:
            out.write(dumps(r.to_json()) + "\n")
        return
    for i, r in enumerate(results):
        if i:
            out.write("\n")
        out.write(f"y = {_h(r.y)}, order = {r.order}\n")
        out.write(f"{'':<8}{'derivative':>14}{'coefficient':>14}\n")
        for j, (d, c) in enumerate(zip(r.derivatives, r.coefficients)):
            out.write(f"{_label(j):<8}{_h(d):>14}{_h(c):>14}\n")
        for w in r.warnings:
            out.write(f"warning: {w}\n")


def cmd_eval(e, args, out: IO[str]) -> None:
    if args.domain == "real":
        v = evaluate(e, args.at, RealDomain())
        payload = {"y": args.at, "domain": "real", "value": v}
        text = _h(v)
    elif args.domain == "complex":
        v = evaluate(e, complex(args.at), ComplexDomain())
        payload = {"y": args.at, "domain": "complex", "value": {"re": v.real, "im": v.imag}}
        text = f"{_h(v.real)} {'+' if v.imag >= 0 else '-'} {_h(abs(v.imag))}i"
    else:
        g = evaluate_at(e, args.at, args.order)
        payload = {"y": args.at, "domain": "gross", "order": args.order, "value": g.to_json()}
        text = g.to_text(HUMAN_DIGITS)
    out.write((dumps(payload) if args.format == "json" else text) + "\n")


def cmd_coeffs(e, args, out: IO[str]) -> None:
    for y in args.at:
        g = evaluate_at(e, y, args.order)
        if args.format == "json":
            rec = {"y": y, "order": args.order, "numeral": g.to_text(MACHINE_DIGITS), "value": g.to_json()}
            out.write(dumps(rec) + "\n")
        else:
            out.write(g.to_text(HUMAN_DIGITS) + "\n")


def compare_table(e, y: float, h_grid: Sequence[float]) -> dict:
    """Errors of each baseline against the grossone first derivative."""
    ref = differentiate(e, y, 1).derivatives[1]
    rows = []
    for h in h_grid:
        row = {"h": h}
        for name, fn in BASELINES.items():
            try:
                est = fn(e, y, h).estimate
            except GrossError:
                est = math.nan
            row[name] = {"estimate": est, "error": abs(est - ref)}
        rows.append(row)
    return {"y": y, "grossone": {"estimate": ref, "error": 0.0}, "rows": rows}


def cmd_compare(e, args, out: IO[str]) -> None:
    table = compare_table(e, args.at, args.h_grid)
    if args.format == "json":
        out.write(dumps(table) + "\n")
        return
    g = table["grossone"]
    out.write(f"y = {_h(args.at)}, grossone f' = {_h(g['estimate'])} (error {_h(g['error'])})\n")
    names = list(BASELINES)
    out.write(f"{'h':>10}" + "".join(f"{n:>15}" for n in names) + "\n")
    for row in table["rows"]:
        out.write(f"{_h(row['h']):>10}" + "".join(f"{_h(row[n]['error']):>15}" for n in names) + "\n")


def cmd_root(e, args, out: IO[str]) -> None:
    root = minimal_root_scan(e, args.a, args.b, args.grid_n, args.tol, args.max_iter)
    if args.format == "json":
        out.write(dumps({"a": args.a, "b": args.b, "root": root}) + "\n")
    elif root is None:
        out.write("no sign change found\n")
    else:
        out.write(f"root = {core.format_digit(root, MACHINE_DIGITS)}\n")


COMMANDS = {
    "diff": cmd_diff,
    "eval": cmd_eval,
    "coeffs": cmd_coeffs,
    "compare": cmd_compare,
    "root": cmd_root,
}


def run(argv: Sequence[str] | None = None, out: IO[str] | None = None, err: IO[str] | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        e = _load_expr(args, parser)
        COMMANDS[args.command](e, args, out)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0
    except UsageError as exc:
        err.write(str(exc))
        return 2
    except ParseError as exc:
        err.write(f"parse error: {exc}\n\n{GRAMMAR}")
        return 2
    except GrossError as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
