#!/usr/bin/env python3
"""Error of each first-derivative estimate across step sizes.

The finite-difference errors fall with h until round-off takes over; the
grossone derivative has no step and no cancellation.
"""

import argparse
import math
from dataclasses import dataclass

from grossdiff.cli import compare_table
from grossdiff.deriv import H_GRID


@dataclass
class SweepConfig:
    expr: str = "x*x*x"
    y: float = 5.0
    exact: float | None = 75.0  # None: use the grossone value as reference


def main():
    cfg = SweepConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--expr", default=cfg.expr)
    ap.add_argument("--at", type=float, default=cfg.y)
    ap.add_argument("--exact", type=float, default=None, help="known f'(y), if any")
    args = ap.parse_args()
    exact = args.exact
    if exact is None and (args.expr, args.at) == (cfg.expr, cfg.y):
        exact = cfg.exact

    table = compare_table(args.expr, args.at, H_GRID)
    ref = table["grossone"]["estimate"] if exact is None else exact
    methods = [k for k in table["rows"][0] if k != "h"]
    print(f"f(x) = {args.expr}, y = {args.at:g}, reference f' = {ref!r}")
    print(f"grossone error: {abs(table['grossone']['estimate'] - ref):.3e}")
    print(f"{'h':>8}" + "".join(f"{m:>14}" for m in methods))
    for row in table["rows"]:
        errs = [abs(row[m]["estimate"] - ref) for m in methods]
        print(f"{row['h']:>8.0e}" + "".join(f"{e:>14.3e}" if math.isfinite(e) else f"{'nan':>14}" for e in errs))


if __name__ == "__main__":
    main()
