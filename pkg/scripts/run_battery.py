"""Run every randomized verification suite and report.

Usage: python scripts/run_battery.py [--trials N] [--seed S] [--format kv]

Exits 0 when every suite passes, 1 otherwise.  A fixed (seed, trials)
pair reproduces the reports byte for byte.
"""

import argparse
import sys

from fihom import run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=None,
                    help="per-suite trial count (default: each suite's own)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", choices=("plain", "kv"), default="plain")
    args = ap.parse_args()
    reports = run_all(trials=args.trials, seed=args.seed)
    for rep in reports:
        print(rep.render(args.format))
        if args.format == "kv":
            print()
    failed = [rep.suite for rep in reports if not rep.passed]
    if failed:
        print("FAILED: %s" % ", ".join(failed), file=sys.stderr)
        return 1
    print("all %d suites passed" % len(reports))
    return 0


if __name__ == "__main__":
    sys.exit(main())
