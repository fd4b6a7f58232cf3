"""Integral representations evaluated by quadrature, as independent checks.

All integrals go through the double-exponential rules in
:mod:`eulersums.quadrature`, whose endpoint distances let the log and
removable singularities be evaluated without cancellation.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import specfun
from .quadrature import QuadratureResult, tanh_sinh

# below this distance from t = 1 the psi integrand is replaced by its limit z - 1
PSI_LIMIT_GAP = 1e-8


def psi_integral(z: float) -> QuadratureResult:
    """gamma + psi(z) = int_0^1 (1 - t^(z-1)) / (1 - t) dt."""
    if not z > 0:
        raise specfun.DomainError("psi_integral requires z > 0")
    if z == 1:
        return QuadratureResult(0.0, 0.0, 0)
    a = z - 1.0

    def f(t, da, db):
        log_t = np.where(da < 0.5, np.log(da), np.log1p(-db))
        val = -np.expm1(a * log_t) / db
        return np.where(db < PSI_LIMIT_GAP, a, val)

    return tanh_sinh(f, 0.0, 1.0, with_distances=True)


def polylog_integral(n: int, z: float) -> QuadratureResult:
    """Li_n(z) = (-1)^(n-1)/(n-2)! int_0^1 log^(n-2)(t) log(1 - t z) / t dt, n >= 2."""
    if int(n) != n or n < 2:
        raise specfun.DomainError("polylog_integral needs an integer n >= 2")
    if not abs(z) <= 1:
        raise specfun.DomainError("polylog_integral needs |z| <= 1")
    n = int(n)
    pref = (-1) ** (n - 1) / math.factorial(n - 2)

    def f(t, da, db):
        log_t = np.where(da < 0.5, np.log(da), np.log1p(-db))
        if z == 1:
            log_1m = np.log(db)
        else:
            log_1m = np.log1p(-t * z)
        return log_t ** (n - 2) * log_1m / t

    r = tanh_sinh(f, 0.0, 1.0, with_distances=True)
    return QuadratureResult(pref * r.value, abs(pref) * r.error_estimate, r.evaluations)


def polylog_recursive_integral(n: int, z: float) -> QuadratureResult:
    """Li_n(z) = int_0^z Li_(n-1)(t) / t dt for n >= 1, 0 < z <= 1."""
    if int(n) != n or n < 1:
        raise specfun.DomainError("polylog_recursive_integral needs an integer n >= 1")
    if not 0 < z <= 1:
        raise specfun.DomainError("polylog_recursive_integral needs 0 < z <= 1")
    n = int(n)
    if n == 1 and z == 1:
        raise specfun.DomainError("Li_1(1) diverges")

    def f(t, da, db):
        if n == 1:
            # Li_0(t) / t = 1 / (1 - t)
            return 1.0 / (1.0 - t)
        if n == 2:
            # Li_1(t) / t = -log(1 - t) / t, with 1 - t taken from the endpoint distance
            one_minus = db if z == 1 else 1.0 - t
            return -np.log(one_minus) / t
        return np.array([specfun.polylog(n - 1, float(x)) for x in t]) / t

    return tanh_sinh(f, 0.0, float(z), with_distances=True)


def dilog_sum_integral(lower: float = 0.0, upper: float = 1.0) -> QuadratureResult:
    """-int log(1 - t) / t dt over [lower, upper]; zeta(2) over [0, 1]."""

    def f(t, da, db):
        one_minus = db if upper == 1.0 else 1.0 - t
        return -np.log(one_minus) / t

    return tanh_sinh(f, lower, upper, with_distances=True)


def logsine_integral() -> QuadratureResult:
    """-4 int_0^(pi/3) u log(2 sin(u/2)) du."""

    def f(u, da, db):
        return -4.0 * da * np.log(2.0 * np.sin(0.5 * da))

    return tanh_sinh(f, 0.0, math.pi / 3, with_distances=True)


def arcsin_sq_integral() -> QuadratureResult:
    """4 int_0^1 arcsin^2(sqrt(t)/2) / t dt."""

    def f(t, da, db):
        return 4.0 * np.arcsin(0.5 * np.sqrt(da)) ** 2 / da

    return tanh_sinh(f, 0.0, 1.0, with_distances=True)


# terms summed explicitly and differences used in the Clausen tail
CLAUSEN_TERMS = 2000
CLAUSEN_DIFFS = 10


def clausen_from_dilog(theta: float) -> QuadratureResult:
    """Cl2(theta) = Im Li2(e^(i theta)) = sum sin(k theta)/k^2, theta in (0, 2 pi).

    The partial sum to N is completed by repeated summation by parts:
    sum_{k>N} w^k f(k) = sum_m w^(N+1+m) (nabla^m f)(N+1+m) / (1-w)^(m+1) + R,
    with w = e^(i theta), f(k) = 1/k^2 and exact rational backward differences.
    """
    if not 0 < theta < 2 * math.pi:
        raise specfun.DomainError("clausen_from_dilog needs theta in (0, 2 pi)")
    n = CLAUSEN_TERMS
    k = np.arange(1, n + 1, dtype=float)
    head = math.fsum(np.sin(k * theta) / k**2)
    w = complex(math.cos(theta), math.sin(theta))
    one_minus_w = 1.0 - w
    tail = 0j
    for m in range(CLAUSEN_DIFFS):
        top = n + 1 + m
        diff = sum(
            Fraction((-1) ** i * math.comb(m, i), (top - i) ** 2) for i in range(m + 1)
        )
        tail += w ** (n + 1 + m) * float(diff) / one_minus_w ** (m + 1)
    # |nabla^M f(k)| <= (M+1)! / k^(M+2); summed over k > N + M
    mm = CLAUSEN_DIFFS
    bound = math.factorial(mm) / (n + mm) ** (mm + 1) / abs(one_minus_w) ** mm
    value = head + tail.imag
    # sin(k theta) carries ~k theta eps absolute error; weighted by 1/k^2 that sums to theta eps log N
    rounding = 2.2e-16 * (theta * (1 + math.log(n)) + 4 * abs(value))
    return QuadratureResult(value, bound + rounding, n + mm)
