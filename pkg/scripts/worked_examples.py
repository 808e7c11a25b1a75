#!/usr/bin/env python3
"""Print the three worked examples: numeral readout and derivatives."""

import argparse
from dataclasses import dataclass

from grossdiff import differentiate, evaluate_at


@dataclass(frozen=True)
class Case:
    label: str
    expr: str
    y: float
    order: int = 3


CASES = (
    Case("cube", "x*x*x", 5.0),
    Case("truncated sine model", "x + x - x*x*x/6", 0.0),
    Case("library sine", "x + sin(x)", 0.0),
    Case("rational", "(x*x+1)/x", 3.0),
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=6, help="significant digits in the numeral")
    args = ap.parse_args()
    for c in CASES:
        numeral = evaluate_at(c.expr, c.y, c.order).to_text(args.digits)
        r = differentiate(c.expr, c.y, c.order)
        print(f"{c.label}: f(x) = {c.expr}, y = {c.y:g}")
        print(f"  f(y + 1/G) = {numeral}")
        print(f"  derivatives = {[float(f'{d:.{args.digits}g}') for d in r.derivatives]}")


if __name__ == "__main__":
    main()
