"""Special functions on the positive real axis (and log-gamma in the right half-plane).

Everything here is double precision.  The digamma/trigamma/log-gamma routines
accept scalars or numpy arrays and return the same shape; the remaining
evaluators are scalar.
"""

from __future__ import annotations

import decimal
import math
from fractions import Fraction
from functools import cache

import numpy as np
from scipy.special import gammaln

__all__ = [
    "DomainError",
    "bernoulli",
    "euler_gamma",
    "digamma",
    "trigamma",
    "zeta_int",
    "polylog",
    "clausen2",
    "catalan",
    "gamma_ratio_log",
    "log_gamma_complex",
    "cvz_alternating",
]

# shift threshold for the asymptotic digamma/trigamma series
PSI_SHIFT = 12.0
# Bernoulli order B_2 .. B_14 in the psi expansions
PSI_TERMS = 7
# |z| threshold for the complex Stirling series
LGAMMA_SHIFT = 15.0


class DomainError(ValueError):
    """Argument outside the supported domain of a special function."""


@cache
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # Akiyama-Tanigawa, B_1 = +1/2 convention; only even indices are used
    out = []
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return tuple(out)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (with B_1 = -1/2)."""
    if n < 0:
        raise DomainError(f"bernoulli index must be >= 0, got {n}")
    if n == 1:
        return Fraction(-1, 2)
    return _bernoulli_table(max(n, 64))[n]


_B2J = [float(bernoulli(2 * j)) for j in range(1, 20)]


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


@cache
def euler_gamma() -> float:
    """Euler's constant, from Euler-Maclaurin applied to H_N - log N.

    Evaluated in 40-digit decimal arithmetic so the float result is correctly rounded.
    """
    n = 10
    with decimal.localcontext() as ctx:
        ctx.prec = 40
        acc = _dec(sum(Fraction(1, k) for k in range(1, n + 1)) - Fraction(1, 2 * n))
        acc -= decimal.Decimal(n).ln()
        for j in range(1, 12):
            acc += _dec(bernoulli(2 * j) / (2 * j * n ** (2 * j)))
        return float(acc)


def _dec(q: Fraction) -> decimal.Decimal:
    return decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator)


def _check_positive(x, name):
    if np.any(~(x > 0)):
        raise DomainError(f"{name} requires x > 0")


def digamma(x):
    """psi(x) for x > 0: upward recurrence to x >= 12, then the Bernoulli series."""
    x, scalar = _as_array(x)
    _check_positive(x, "digamma")
    x = x.copy()
    acc = np.zeros_like(x)
    small = x < PSI_SHIFT
    while np.any(small):
        acc[small] -= 1.0 / x[small]
        x[small] += 1.0
        small = x < PSI_SHIFT
    r2 = 1.0 / (x * x)
    poly = np.zeros_like(x)
    for j in range(PSI_TERMS, 0, -1):
        poly = poly * r2 + _B2J[j - 1] / (2 * j)
    out = acc + np.log(x) - 0.5 / x - poly * r2
    return float(out) if scalar else out


def trigamma(x):
    """psi'(x) for x > 0."""
    x, scalar = _as_array(x)
    _check_positive(x, "trigamma")
    x = x.copy()
    acc = np.zeros_like(x)
    small = x < PSI_SHIFT
    while np.any(small):
        acc[small] += 1.0 / (x[small] * x[small])
        x[small] += 1.0
        small = x < PSI_SHIFT
    r = 1.0 / x
    r2 = r * r
    poly = np.zeros_like(x)
    for j in range(PSI_TERMS, 0, -1):
        poly = poly * r2 + _B2J[j - 1]
    out = acc + r + 0.5 * r2 + poly * r2 * r
    return float(out) if scalar else out


@cache
def zeta_int(m: int) -> float:
    """Riemann zeta at an integer m >= 2 (direct sum + Euler-Maclaurin tail)."""
    if int(m) != m or m < 2:
        raise DomainError(f"zeta_int needs an integer m >= 2, got {m}")
    m = int(m)
    n = 10
    parts = [k ** -float(m) for k in range(1, n)]
    parts.append(n ** (1.0 - m) / (m - 1))
    parts.append(0.5 * n ** -float(m))
    # rising factorial m (m+1) ... (m+2j-2) / (2j)!
    rising = Fraction(m)
    for j in range(1, 10):
        coef = bernoulli(2 * j) * rising / math.factorial(2 * j)
        parts.append(float(coef) * n ** (-float(m) - 2 * j + 1))
        rising *= (m + 2 * j - 1) * (m + 2 * j)
    return math.fsum(parts)


def _zeta_any(s: int) -> float:
    # integer s != 1, including non-positive values
    if s >= 2:
        return zeta_int(s)
    if s == 0:
        return -0.5
    return float(-bernoulli(1 - s) / (1 - s))


def _polylog_direct(n: int, z: float) -> float:
    parts = []
    zk = 1.0
    k = 1
    while True:
        zk *= z
        t = zk / k**n
        parts.append(t)
        if abs(t) < 1e-18 or k > 2000:
            break
        k += 1
    return math.fsum(parts)


def _polylog_logseries(n: int, z: float) -> float:
    # expansion in mu = log z, valid for |mu| < 2 pi; used on (1/2, 1)
    mu = math.log(z)
    harmonic = math.fsum(1.0 / j for j in range(1, n))
    parts = [mu ** (n - 1) / math.factorial(n - 1) * (harmonic - math.log(-mu))]
    for k in range(0, 60):
        if k == n - 1:
            continue
        z_val = _zeta_any(n - k)
        if z_val == 0.0:
            continue
        t = z_val * mu**k / math.factorial(k)
        parts.append(t)
        if k > n and abs(t) < 1e-20:
            break
    return math.fsum(parts)


def polylog(n: int, z: float) -> float:
    """Li_n(z) for integer n >= 1 and real |z| <= 1."""
    if int(n) != n or n < 1:
        raise DomainError(f"polylog order must be an integer >= 1, got {n}")
    n = int(n)
    z = float(z)
    if not abs(z) <= 1.0:
        raise DomainError(f"polylog needs |z| <= 1, got {z}")
    if n == 1:
        if z == 1.0:
            raise DomainError("Li_1(1) diverges")
        return -math.log1p(-z)
    if z == 0.0:
        return 0.0
    if z == 1.0:
        return zeta_int(n)
    if z == -1.0:
        return (2.0 ** (1 - n) - 1.0) * zeta_int(n)
    if abs(z) <= 0.5:
        return _polylog_direct(n, z)
    if z > 0:
        return _polylog_logseries(n, z)
    # square relation: Li_n(-x) = 2^(1-n) Li_n(x^2) - Li_n(x)
    return 2.0 ** (1 - n) * polylog(n, z * z) - polylog(n, -z)


_CL2_COEFS = [
    float(abs(bernoulli(2 * k)) / (2 * k * math.factorial(2 * k + 1))) for k in range(1, 40)
]


def clausen2(theta: float) -> float:
    """Clausen's function Cl_2(theta) = sum sin(k theta)/k^2.

    After reduction to [0, pi] by periodicity and oddness this uses
    Cl_2(t) = t - t log t + sum_k |B_2k| t^(2k+1) / (2k (2k+1)!),
    which converges geometrically with ratio (t / 2 pi)^2.
    """
    two_pi = 2.0 * math.pi
    t = math.fmod(float(theta), two_pi)
    if t < 0:
        t += two_pi
    sign = 1.0
    if t > math.pi:
        t = two_pi - t
        sign = -1.0
    if t == 0.0:
        return 0.0
    t2 = t * t
    power = t * t2
    parts = [t, -t * math.log(t)]
    for c in _CL2_COEFS:
        term = c * power
        parts.append(term)
        if term < 1e-19:
            break
        power *= t2
    return sign * math.fsum(parts)


def cvz_alternating(terms, n: int | None = None) -> float:
    """Sum of (-1)^k a_k, k >= 0, by the Cohen-Villegas-Zagier acceleration.

    `terms` is a sequence a_0, a_1, ... of length >= n (n defaults to its length).
    Converges like 5.8^-n for totally monotone a_k.
    """
    a = list(terms)
    if n is None:
        n = len(a)
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1))
    return s / d


@cache
def catalan() -> float:
    """Catalan's constant, sum (-1)^k/(2k+1)^2 accelerated (CVZ in 40-digit decimals)."""
    n = 40
    D = decimal.Decimal
    with decimal.localcontext() as ctx:
        ctx.prec = 40
        d = (D(3) + D(8).sqrt()) ** n
        d = (d + 1 / d) / 2
        b, c, s = D(-1), -d, D(0)
        for k in range(n):
            c = b - c
            s += c / D((2 * k + 1) ** 2)
            b = (k + n) * (k - n) * b / ((D(k) + D("0.5")) * (k + 1))
        return float(s / d)


def gamma_ratio_log(a, b):
    """log(Gamma(a)/Gamma(b)) for a, b > 0; arrays broadcast."""
    a_arr, sa = _as_array(a)
    b_arr, sb = _as_array(b)
    if np.any(~(a_arr > 0)) or np.any(~(b_arr > 0)):
        raise DomainError("gamma_ratio_log requires positive arguments")
    out = gammaln(a_arr) - gammaln(b_arr)
    return float(out) if (sa and sb) else out


_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_STIRLING = [_B2J[j - 1] / (2 * j * (2 * j - 1)) for j in range(1, 10)]


def log_gamma_complex(z):
    """Principal branch of log Gamma(z) for Re z > 0 (scalar or array)."""
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    if np.any(~(arr.real > 0)):
        raise DomainError("log_gamma_complex requires Re z > 0")
    w = arr.copy()
    acc = np.zeros_like(w)
    small = np.abs(w) < LGAMMA_SHIFT
    while np.any(small):
        acc[small] -= np.log(w[small])
        w[small] += 1.0
        small = np.abs(w) < LGAMMA_SHIFT
    r = 1.0 / w
    r2 = r * r
    series = np.zeros_like(w)
    for c in reversed(_STIRLING):
        series = series * r2 + c
    out = acc + (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + series * r
    return complex(out) if scalar else out
