"""Fit spread time exponents for a sweep of target (alpha, beta) pairs.

Each pair maps to its witness family (star, or diamond strings with
size-dependent m and k); the fitted exponents should track the targets.
"""

import argparse
import sys

from pushpull import cli

PAIRS = [
    (0.0, 0.0),
    (0.0, 1.0 / 3.0),
    (1.0 / 6.0, 1.0 / 3.0),
    (1.0 / 3.0, 1.0 / 3.0),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1000,3162,10000,31623,100000")
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-prefix", default="attainability")
    args = parser.parse_args()
    worst = 0
    for alpha, beta in PAIRS:
        out = f"{args.out_prefix}_a{alpha:.3f}_b{beta:.3f}.csv"
        rc = cli.main(
            [
                "attainability",
                "--alpha",
                str(alpha),
                "--beta",
                str(beta),
                "--family",
                args.sizes,
                "--trials",
                str(args.trials),
                "--seed",
                str(args.seed),
                "--out",
                out,
            ]
        )
        print(f"alpha={alpha:.3f} beta={beta:.3f} -> {out} (exit {rc})")
        worst = max(worst, rc)
    return worst


if __name__ == "__main__":
    sys.exit(main())
