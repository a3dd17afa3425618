"""Recompute the worked examples: the D_125 counterexample, the C_125 x| C_4 curve and the w0 = 1 family."""

import argparse
import time

from liftoracle import GroupSpec, decide, explicit_w01_pairing, family_jumps, load_fixture, make_group


def line(label, rep, elapsed):
    d = rep.diagnostics
    tail = f"witness {rep.witness}" if rep.witness is not None else f"{len(rep.certificate.groups)} groups"
    print(f"{label:<38} genus {d['genus']:>6}  summands {d['summands']:>4}  kgb {str(d['kgb_vanishes']):<5}  "
          f"{rep.decision:<13} {tail}  [{elapsed * 1000:.1f} ms]")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cross-check", action="store_true", help="re-derive dihedral answers by partition search")
    args = ap.parse_args()

    for w0 in (1, 3, 7, 9):
        t = time.perf_counter()
        rep = decide(GroupSpec.dihedral(5, 3), family_jumps(5, 3, w0), cross_check=args.cross_check)
        line(f"D_125, upper jumps {w0},{5 * w0},{25 * w0}", rep, time.perf_counter() - t)
    fx = load_fixture("d125_w0_9_modules")
    rep = decide(GroupSpec.dihedral(5, 3), fx["lower_jumps"])
    same = rep.modules.as_dict() == {(r["socle"], r["dim"]): r["mult"] for r in fx["modules"]}
    print(f"  D_125 w0=9 decomposition equals shipped list: {same}")

    for alpha in (57, 68):
        spec = make_group(5, 3, 4, alpha=alpha)
        t = time.perf_counter()
        rep = decide(spec, [1, 21, 521])
        line(f"C_125 x| C_4, alpha={alpha} (a0={spec.a0})", rep, time.perf_counter() - t)
        if rep.certificate is not None:
            print("  groups (V-notation): " + "; ".join(" ".join(f"V({l},{k})" for l, k in grp) for grp in rep.certificate.groups))

    print("\nw0 = 1 family, explicit complementary pairs:")
    for p, h in [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2)]:
        pairs = explicit_w01_pairing(p, h)
        print(f"  p={p} h={h}: " + ", ".join(f"{a}<->{b}" for a, b in pairs))


if __name__ == "__main__":
    main()
