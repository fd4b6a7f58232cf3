"""Forward and inverse Mellin examples and the three-term factorization check."""

import math

from eulersums import mellin


def main() -> int:
    print("forward: int_0^inf t^k e^(-z t) dt = k!/z^(k+1)")
    for k in range(5):
        v = mellin.mellin_forward_example(k, 0.5)
        print(f"  k={k} z=0.5  {v:.12g}  rel err {abs(v / (math.factorial(k) * 2 ** (k + 1)) - 1):.1e}")

    print("inverse: recover log^k x from k!/z^(k+1)")
    for x in (2.0, math.e, 10.0):
        for k in (0, 1, 2):
            spec = mellin.default_inverse_contour(k, x)
            v = mellin.inverse_mellin_example(k, x)
            print(f"  x={x:<8.5g} k={k}  T={spec.T:9.1f}  defect {abs(v - math.log(x) ** k):.1e}")

    print("factorization of (A1 + A2 + A3)^-p")
    for args in ((1j, 1j, 1j, 3.0, 0.5, 0.5), (1 + 1j, 2 + 1j, 0.5 + 2j, 2.5, 0.7, 0.7)):
        r = mellin.factorization_check(*args)
        print(f"  {args}: |lhs - rhs| = {r.abs_diff:.1e}  (estimate {r.error_estimate:.1e})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
