"""Sweep the exact duality verification over an (r, order) grid.

Prints one line per run with the elapsed wall time, so arithmetic
regressions show up as timing cliffs and any identity failure aborts
with the offending parameter tuple. All checks are exact; a pass means
coefficient-for-coefficient equality.

Usage:
    python3 scripts/verification_sweep.py --r-max 5 --samples 3 --order 40
    python3 scripts/verification_sweep.py --qshift --q 2/3 --samples 2
"""

import argparse
import random
import time

from hgdual.cli import sample_qshift_params, sample_theta_params
from hgdual.exact_algebra import rat
from hgdual.hypergeometric import verify_theorem1
from hgdual.q_hypergeometric import verify_theorem2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r-max", type=int, default=5)
    ap.add_argument("--samples", type=int, default=3)
    ap.add_argument("--order", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--qshift", action="store_true", help="run the q-shift suite")
    ap.add_argument("--q", type=rat, default=rat("1/2"))
    args = ap.parse_args()

    rng = random.Random(args.seed)
    total = time.time()
    for r in range(2, args.r_max + 1):
        for s in range(args.samples):
            if args.qshift:
                p = sample_qshift_params(rng, r, args.q)
            else:
                p = sample_theta_params(rng, r)
            t = time.time()
            if args.qshift:
                report = verify_theorem2(p, args.order)
            else:
                report = verify_theorem1(p, args.order)
            verdict = "pass" if report.passed else "FAIL"
            print(
                "r=%d sample=%d cells=%d %s %.2fs"
                % (r, s, len(report.cells), verdict, time.time() - t)
            )
            if not report.passed:
                for cell in report.failures:
                    print("  FAIL cell %s at %r" % (cell.label, p))
                raise SystemExit(1)
    print("sweep complete in %.2fs" % (time.time() - total))


if __name__ == "__main__":
    main()
