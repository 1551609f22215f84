#!/usr/bin/env python3
"""Closed-form risk vs the Monte Carlo oracle, under both bound conventions.

Prints one line per grid cell and names the convention(s) that stay within
3 oracle standard errors everywhere.  The ratio form survives; the linear
form is off by up to ~100 standard errors, which is why the package
defaults to the ratio form.

    python scripts/validate_convention.py --reps 200000
"""

import argparse
import sys

from recshrink.cli import cmd_validate


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=200_000)
    parser.add_argument("--seed", type=int, default=20260811)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()
    return cmd_validate(args)


if __name__ == "__main__":
    sys.exit(main())
