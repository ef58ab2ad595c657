"""How sharp are the small-arity bounds against +-1 coefficient forms?

For each (n, N) pair, run the exhaustive search when the coefficient count
permits and the seeded random/local-flip strategies otherwise, then print
the best empirical ratio next to the proven upper bound.  At (2, 2) the
ratio sqrt(2) is attained (Littlewood); everywhere else there is slack.

Usage: python3 scripts/search_small_forms.py [--budget B] [--seed K]
"""

import argparse
import math

from bhconstants.constants import real_recursive
from bhconstants.verifier import SearchStrategy, search_lower_bound

PAIRS = ((2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2))


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>2} {'N':>2}  {'strategy':<14} {'best ratio':>12} "
          f"{'bound':>12} {'slack':>9}")
    for n, N in PAIRS:
        bound = real_recursive(n).value.to_float()
        if N ** n <= 20:
            strategies = [SearchStrategy.EXHAUSTIVE_PM1]
        else:
            strategies = [SearchStrategy.RANDOM_PM1, SearchStrategy.LOCAL_FLIP]
        for strategy in strategies:
            report, form = search_lower_bound(
                n, N, strategy, budget=args.budget, seed=args.seed)
            slack = bound - report.ratio
            tag = " sharp" if math.isclose(report.ratio, bound,
                                           rel_tol=1e-9) else ""
            print(f"{n:>2} {N:>2}  {strategy.value:<14} {report.ratio:>12.8f} "
                  f"{bound:>12.8f} {slack:>9.2e}{tag}")


if __name__ == "__main__":
    main()
