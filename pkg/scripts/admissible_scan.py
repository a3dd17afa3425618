"""Scan all admissible upper-jump sequences in a box and tabulate decisions.

Unlike the family sweep this also enumerates jumps above p * w_prev, so it
covers drops of the geometric pattern. With --cross-check every dihedral
answer is re-derived by the general partition search.
"""

import argparse
import collections
import json

from liftoracle.scan import ScanRange, scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--h", type=int, default=3)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--alpha", type=int)
    ap.add_argument("--a0", type=int)
    ap.add_argument("--w0-max", type=int, default=10)
    ap.add_argument("--slack", type=int, default=6)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--budget", type=int)
    ap.add_argument("--cross-check", action="store_true")
    ap.add_argument("--jsonl", action="store_true", help="emit every record instead of the summary")
    args = ap.parse_args()

    rng = ScanRange(args.p, args.h, args.m, args.w0_max, family_only=False, slack=args.slack,
                    alpha=args.alpha, a0=args.a0)
    tally = collections.Counter()
    by_kgb = collections.Counter()
    for rec in scan(rng, workers=args.workers, budget=args.budget, cross_check=args.cross_check):
        if args.jsonl:
            print(json.dumps(rec, sort_keys=True))
        tally[rec["decision"]] += 1
        if "kgb_vanishes" in rec:
            by_kgb[(rec["kgb_vanishes"], rec["decision"])] += 1
    if not args.jsonl:
        print(f"p={args.p} h={args.h} m={args.m} w0<={args.w0_max} slack={args.slack}")
        for k, v in sorted(tally.items()):
            print(f"  {k:<14} {v}")
        for (kgb, dec), v in sorted(by_kgb.items()):
            print(f"  kgb vanishes={kgb!s:<5} {dec:<14} {v}")


if __name__ == "__main__":
    main()
