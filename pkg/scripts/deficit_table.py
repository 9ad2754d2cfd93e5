#!/usr/bin/env python3
"""Tabulate the inscribed-polygon area deficit at integer radii.

For integer k the chord-length sum equals the area of the inscribed polygon,
so deficit(k) = pi*k**2 - chord_length_sum(k) is strictly positive.  The
table records deficit, deficit/sqrt(k), and deficit/sqrt(2k - 1); the second
ratio stays above 1 (the frozen constant c0 = 1 used by the acceptance
suite), the third dips below 1 already at k = 2.

Writes results/deficit_table.csv by default.
"""
import argparse
import math
import sys
from pathlib import Path

from shearcount import chord_length_sum


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kmax", type=int, default=100)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "results" / "deficit_table.csv"))
    args = parser.parse_args(argv)

    rows = []
    for k in range(1, args.kmax + 1):
        d = math.pi * k * k - chord_length_sum(float(k))
        rows.append((k, d, d / math.sqrt(k), d / math.sqrt(2 * k - 1)))

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        fh.write("k,deficit,deficit_over_sqrt_k,deficit_over_sqrt_2k_minus_1\n")
        for k, d, r1, r2 in rows:
            fh.write(f"{k},{d!r},{r1!r},{r2!r}\n")

    tail = [r for r in rows if r[0] >= 2]
    print(f"wrote {out} ({len(rows)} rows)")
    print(f"min deficit/sqrt(k) over k in [2, {args.kmax}]: {min(r[2] for r in tail):.6f} "
          f"(at k = {min(tail, key=lambda r: r[2])[0]})")
    print(f"max deficit/sqrt(k): {max(r[2] for r in tail):.6f}")
    print(f"min deficit/sqrt(2k-1): {min(r[3] for r in tail):.6f}  (< 1, so that floor fails)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
