#!/usr/bin/env python3
"""Run all three verification campaigns and print their reports.

Usage: python scripts/run_verification.py [--seed S] [--samples N]
Exit code 0 iff every campaign passes.
"""

import argparse
import sys

from zxq.harness import verify_p_formulas, verify_relations, verify_rules


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=None)
    args = ap.parse_args()

    reports = [
        verify_rules(seed=args.seed, samples=args.samples or 100),
        verify_relations(),
        verify_p_formulas(seed=args.seed, samples=args.samples or 1000),
    ]
    ok = True
    for rep in reports:
        sys.stdout.write(rep.render_body())
        print(f"# wall time: {rep.wall_time:.2f}s\n", file=sys.stderr)
        ok = ok and rep.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
