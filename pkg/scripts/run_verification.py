"""Verify every catalog identity and general-k row, print a table and write JSON.

    python3 scripts/run_verification.py [--jobs N] [--out report.json]
"""

import argparse
import json
import time

from eulersums import catalog


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default=None, help="write the full reports as JSON")
    args = ap.parse_args()

    t0 = time.perf_counter()
    reports = catalog.verify_all(parallel=args.jobs > 1, jobs=args.jobs)
    elapsed = time.perf_counter() - t0

    for r in reports:
        flag = "PASS" if r.passed else "FAIL"
        print(f"{r.id:<16} {flag}  diff={r.abs_diff:9.2e}  tol={r.tolerance:7.0e}  {r.rhs_text}")
    failed = [r.id for r in reports if not r.passed]
    print(f"\n{len(reports) - len(failed)}/{len(reports)} passed in {elapsed:.1f} s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([catalog.report_dict(r) for r in reports], fh, indent=2)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
