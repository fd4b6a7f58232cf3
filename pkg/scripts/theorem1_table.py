"""Closed forms of sum_n (+-1)^n [gamma + psi(1 + k n)] / n^2, i.e. sum_n H_(kn) / n^2, plain and alternating.

Prints the exact closed form next to its value and a direct numerical sum.
"""

import argparse

from eulersums import catalog
from eulersums.closed_form import cf_eval, render
from eulersums.summation import sum_1d


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=8)
    args = ap.parse_args()
    worst = 0.0
    for alt in (False, True):
        print("alternating" if alt else "plain")
        for k in range(1, args.kmax + 1):
            cf = catalog.theorem1_closed_form(k, alt)
            direct = sum_1d(catalog.theorem_summand(k, alt), 1e-10).value
            diff = abs(cf_eval(cf) - direct)
            worst = max(worst, diff)
            print(f"  k={k:<2} {cf_eval(cf):+.15f}  diff={diff:.1e}  {render(cf)}")
    print(f"largest difference {worst:.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
