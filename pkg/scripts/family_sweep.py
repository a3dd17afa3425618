"""Decide the geometric family w0, p w0, p^2 w0, ... for D_{p^h} over a range of w0.

Prints one row per (p, h) with the w0 values whose action does not lift.
"""

import argparse
import time

from liftoracle.scan import ScanRange, scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--max-h", type=int, default=3)
    ap.add_argument("--w0-max", type=int, default=40)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    for p in args.primes:
        for h in range(1, args.max_h + 1):
            t = time.perf_counter()
            records = list(scan(ScanRange(p=p, h=h, m=2, w0_max=args.w0_max), workers=args.workers))
            bad = [r["upper_jumps"][0] for r in records if r["decision"] == "not-liftable"]
            unknown = [r["upper_jumps"][0] for r in records if r["decision"] == "indeterminate"]
            print(f"p={p} h={h}: {len(records)} sequences, {len(bad)} not liftable"
                  + (f" (w0 = {', '.join(map(str, bad))})" if bad else "")
                  + (f", indeterminate {unknown}" if unknown else "")
                  + f"  [{time.perf_counter() - t:.2f}s]")


if __name__ == "__main__":
    main()
