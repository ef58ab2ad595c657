"""Regenerate the two headline tables in one run.

Table 1: the fifteen r_n checkpoints with their reciprocals s_n = 1/r_n.
Table 2: the real-field constants C_n at selected n, rendered the same way
the CLI renders them (plain value below 10^4, power of ten above).

Usage: python3 scripts/reproduce_tables.py [--precision BITS]
"""

import argparse
import time

from bhconstants.cli import approx_cell, fmt_fixed
from bhconstants.constants import RN_TABLE_CHECKPOINTS, accumulator_for, real_closed, rn, sn
from bhconstants.numerics import DEFAULT_CONTEXT, PrecisionContext

C_TABLE_POINTS = (30, 50, 100, 500, 1000, 5000)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--precision", type=int, default=128)
    args = ap.parse_args()
    ctx = (DEFAULT_CONTEXT if args.precision == 128
           else PrecisionContext(mantissa_bits=args.precision))

    started = time.monotonic()
    acc = accumulator_for(ctx)
    print(f"r_n checkpoints ({args.precision}-bit working precision)")
    print(f"{'n':>9}  {'r_n':>8}  {'s_n':>8}")
    for n in RN_TABLE_CHECKPOINTS:
        print(f"{n:>9}  {fmt_fixed(rn(n, acc, ctx), 5):>8}  "
              f"{fmt_fixed(sn(n, acc, ctx), 5):>8}")
    print(f"# accumulator sweep to k = {acc.k_max} "
          f"in {time.monotonic() - started:.1f}s")

    print()
    print("real-field constants C_n (closed form)")
    print(f"{'n':>5}  {'C_n':>12}  {'log2':>14}")
    for n in C_TABLE_POINTS:
        est = real_closed(n, ctx, acc)
        cell = approx_cell(est.log2_value, ctx)
        print(f"{n:>5}  {cell:>12}  {fmt_fixed(est.log2_value, 6):>14}")


if __name__ == "__main__":
    main()
