#!/usr/bin/env python3
"""Worst relative error per derivative order over the symbolic test corpus."""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from corpus import CORPUS, MAX_K, all_oracles, relative_error  # noqa: E402

from grossdiff import differentiate  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=MAX_K)
    args = ap.parse_args()
    oracles = all_oracles()
    worst = [0.0] * (args.order + 1)
    t0 = time.perf_counter()
    for text, y, want in oracles:
        got = differentiate(text, y, args.order).derivatives
        for j in range(min(len(want), args.order + 1)):
            worst[j] = max(worst[j], relative_error(got[j], want[j]))
    elapsed = time.perf_counter() - t0
    print(f"{len(CORPUS)} expressions, {len(oracles)} points, {elapsed * 1e3:.1f} ms")
    for j, w in enumerate(worst):
        print(f"  order {j}: worst relative error {w:.2e}")


if __name__ == "__main__":
    main()
