"""Check the spread time bracket and band on reference diamond strings.

For each (m, k): the sync mean must land in [2m, 4m+1] and the async
mean inside the analytic band, both up to 3 standard errors.  Exits
nonzero if any check fails.
"""

import argparse
import sys

from pushpull import cli

FIXTURES = [(5, 4), (10, 9), (10, 25), (20, 25)]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=10000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-prefix", default="diamonds")
    args = parser.parse_args()
    worst = 0
    for m, k in FIXTURES:
        out = f"{args.out_prefix}_m{m}_k{k}.csv"
        rc = cli.main(
            [
                "diamonds",
                "--m",
                str(m),
                "--k",
                str(k),
                "--trials",
                str(args.trials),
                "--seed",
                str(args.seed),
                "--out",
                out,
            ]
        )
        print(f"m={m} k={k} -> {out} (exit {rc})")
        worst = max(worst, rc)
    return worst


if __name__ == "__main__":
    sys.exit(main())
