"""Truncated asymptotic series in n^-p log^q n and their analytic tail sums.

An ``AsymSeries`` stores coefficients c[p, q] of n^-p (log n)^q for
0 <= p <= order.  Summand expansions are assembled from a few primitives
(powers, digamma, trigamma) with ordinary arithmetic and the affine change
of variable x = a*n + b, so the same algebra covers psi(1 + k n), 1/(n + 1),
and the pairing used for alternating series.
"""

from __future__ import annotations

import math
import sys
from collections import defaultdict
from functools import cache
from math import comb

from . import specfun

DEFAULT_ORDER = 8
EM_TERMS = 5


class AsymSeries:
    __slots__ = ("coefs", "order")

    def __init__(self, coefs=None, order: int = DEFAULT_ORDER):
        self.order = order
        self.coefs = {
            (p, q): float(c) for (p, q), c in (coefs or {}).items() if p <= order and c != 0.0
        }

    @classmethod
    def const(cls, c: float, order: int = DEFAULT_ORDER) -> "AsymSeries":
        return cls({(0, 0): c}, order)

    @classmethod
    def power(cls, p: int, order: int = DEFAULT_ORDER) -> "AsymSeries":
        """n^-p."""
        return cls({(p, 0): 1.0}, order)

    @classmethod
    def log(cls, order: int = DEFAULT_ORDER) -> "AsymSeries":
        return cls({(0, 1): 1.0}, order)

    def _lift(self, other) -> "AsymSeries":
        if isinstance(other, AsymSeries):
            return other
        return AsymSeries.const(float(other), self.order)

    def __add__(self, other):
        other = self._lift(other)
        out = defaultdict(float, self.coefs)
        for key, c in other.coefs.items():
            out[key] += c
        return AsymSeries(out, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return AsymSeries({k: -c for k, c in self.coefs.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, AsymSeries):
            return AsymSeries({k: c * other for k, c in self.coefs.items()}, self.order)
        order = min(self.order, other.order)
        out = defaultdict(float)
        for (p1, q1), c1 in self.coefs.items():
            for (p2, q2), c2 in other.coefs.items():
                if p1 + p2 <= order:
                    out[p1 + p2, q1 + q2] += c1 * c2
        return AsymSeries(out, order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = AsymSeries.const(1.0, self.order)
        for _ in range(k):
            out = out * self
        return out

    def min_power(self) -> int:
        return min((p for p, _ in self.coefs), default=self.order + 1)

    def max_log(self) -> int:
        return max((q for _, q in self.coefs), default=0)

    def substitute(self, a: float, b: float) -> "AsymSeries":
        """Re-expand in n, where this series is in x = a*n + b."""
        order = self.order
        r = b / a
        log_x = AsymSeries({(0, 1): 1.0, (0, 0): math.log(a)}, order)
        for j in range(1, order + 1):
            log_x = log_x + AsymSeries({(j, 0): (-1) ** (j + 1) * r**j / j}, order)
        log_powers = [AsymSeries.const(1.0, order)]
        out = AsymSeries({}, order)
        for (p, q), c in self.coefs.items():
            while len(log_powers) <= q:
                log_powers.append(log_powers[-1] * log_x)
            # x^-p = a^-p n^-p (1 + r/n)^-p
            pw = {}
            for j in range(0, order - p + 1):
                pw[p + j, 0] = a ** (-p) * _binom_neg(p, j) * r**j
            out = out + AsymSeries(pw, order) * log_powers[q] * c
        return out

    def evaluate(self, n: float) -> float:
        ln = math.log(n)
        return math.fsum(c * ln**q * n ** (-p) for (p, q), c in self.coefs.items())

    def __repr__(self):
        body = ", ".join(f"n^-{p} log^{q}: {c:.6g}" for (p, q), c in sorted(self.coefs.items()))
        return f"AsymSeries(order={self.order}; {body})"


def _binom_neg(p: int, j: int) -> float:
    # binomial(-p, j)
    return (-1) ** j * comb(p + j - 1, j) if p > 0 else float(comb(-p, j)) if j <= -p else 0.0


def digamma_series(order: int = DEFAULT_ORDER) -> AsymSeries:
    """psi(x) ~ log x - 1/(2x) - sum B_2j / (2j x^2j)."""
    coefs = {(0, 1): 1.0, (1, 0): -0.5}
    for j in range(1, order // 2 + 1):
        coefs[2 * j, 0] = -float(specfun.bernoulli(2 * j)) / (2 * j)
    return AsymSeries(coefs, order)


def trigamma_series(order: int = DEFAULT_ORDER) -> AsymSeries:
    """psi'(x) ~ 1/x + 1/(2x^2) + sum B_2j / x^(2j+1)."""
    coefs = {(1, 0): 1.0, (2, 0): 0.5}
    for j in range(1, order // 2 + 1):
        coefs[2 * j + 1, 0] = float(specfun.bernoulli(2 * j))
    return AsymSeries(coefs, order)


def harmonic(k: float = 1, shift: float = 1, order: int = DEFAULT_ORDER) -> AsymSeries:
    """Expansion of gamma + psi(shift + k n) in n."""
    return digamma_series(order).substitute(k, shift) + specfun.euler_gamma()


def trigamma_at(k: float = 1, shift: float = 0, order: int = DEFAULT_ORDER) -> AsymSeries:
    """Expansion of psi'(shift + k n) in n."""
    return trigamma_series(order).substitute(k, shift)


def reciprocal(shift: float, power: int = 1, order: int = DEFAULT_ORDER) -> AsymSeries:
    """Expansion of (n + shift)^-power."""
    return AsymSeries.power(power, order).substitute(1.0, shift)


# ---------------------------------------------------------------- tail sums


def _derivative(poly: dict, s: int) -> tuple[dict, int]:
    # d/dx of sum_a c_a L^a x^-s, L = log x
    out = defaultdict(float)
    for a, c in poly.items():
        if a:
            out[a - 1] += a * c
        out[a] += -s * c
    return dict(out), s + 1


def _eval_poly(poly: dict, s: int, n: float) -> float:
    ln = math.log(n)
    return math.fsum(c * ln**a for a, c in poly.items()) * n ** (-s)


@cache
def tail_power_log(p: int, q: int, n: float) -> float:
    """sum_{m > n} (log m)^q / m^p for p >= 2 (Euler-Maclaurin)."""
    if p < 2:
        raise ValueError(f"tail of n^-{p} log^{q} n diverges")
    ln = math.log(n)
    parts = [
        n ** (1 - p) * math.factorial(q) / math.factorial(q - i) * ln ** (q - i) / (p - 1) ** (i + 1)
        for i in range(q + 1)
    ]
    poly, s = {q: 1.0}, p
    parts.append(-0.5 * _eval_poly(poly, s, n))
    poly, s = _derivative(poly, s)
    for j in range(1, EM_TERMS + 1):
        coef = float(specfun.bernoulli(2 * j)) / math.factorial(2 * j)
        parts.append(-coef * _eval_poly(poly, s, n))
        poly, s = _derivative(*_derivative(poly, s))
    return math.fsum(parts)


def series_tail(series: AsymSeries, n: float) -> tuple[float, float]:
    """Tail sum_{m > n} of a summand with the given expansion.

    Returns (tail, truncation error estimate).  The estimate is ten times the
    contribution of the two highest retained orders, which dominates the first
    omitted order by a factor ~n.
    """
    bad = [key for key, c in series.coefs.items() if key[0] < 2 and abs(c) > 1e-12]
    if bad:
        raise ValueError(f"expansion has non-summable terms {bad}")
    contrib = {
        key: c * tail_power_log(key[0], key[1], n)
        for key, c in series.coefs.items()
        if key[0] >= 2
    }
    tail = math.fsum(contrib.values())
    top = series.order
    high = math.fsum(abs(v) for (p, _), v in contrib.items() if p >= top - 1)
    err = 10.0 * high + 4 * sys.float_info.epsilon * math.fsum(abs(v) for v in contrib.values())
    return tail, err

