"""Numerical summation of 1-D and 2-D infinite series with error estimates.

Primary 1-D path: a long vectorized partial sum (compensated with math.fsum)
plus an analytic tail computed from the summand's declared asymptotic
expansion.  Alternating summands are paired first.  The cross-check path
is structurally different: Euler-Maclaurin with a quadrature integral and
finite-difference derivatives for smooth summands, Cohen-Villegas-Zagier
for alternating ones.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from . import specfun
from .asymptotic import AsymSeries, series_tail
from .quadrature import exp_sinh_rule

EPS = sys.float_info.epsilon

DEFAULT_CUTOFF = 10**6
TERM_BUDGET = 10**7
CHUNK = 2**18
# direct terms before the Euler-Maclaurin tail in the quadrature-based paths
EM_START = 32
ROW_TERMS = 32
OUTER_ROWS = 32


class NoConvergence(RuntimeError):
    """The error estimate could not be pushed below the target."""


# ---------------------------------------------------------------- tail classes


@dataclass(frozen=True)
class PolyLog:
    """Summand ~ log(n)^log_power / n^power, with its full asymptotic expansion."""

    power: int
    log_power: int
    expansion: AsymSeries = field(repr=False, compare=False)

    @property
    def has_log(self) -> bool:
        return self.log_power > 0


@dataclass(frozen=True)
class Alternating:
    """(-1)^n a(n), where `inner` describes a(n)."""

    inner: PolyLog


@dataclass(frozen=True)
class Exponential:
    """Terms decay geometrically or faster."""


@dataclass(frozen=True)
class Custom:
    """User tail: tail(N) -> (sum_{n > N} term(n), error); `order` documents its accuracy."""

    tail: Callable[[int], tuple[float, float]]
    order: str = ""


TailClass = Union[PolyLog, Alternating, Exponential, Custom]


@dataclass(frozen=True)
class Summand1D:
    """term(n) vectorized over float arrays of integer values n >= start.

    Non-alternating terms must also accept non-integer n (the cross-check
    integrates them).  rel_term_error bounds the relative error of one
    evaluated term.
    """

    term: Callable[[np.ndarray], np.ndarray]
    start: int
    tail: TailClass
    description: str = ""
    rel_term_error: float = 32 * EPS


@dataclass(frozen=True)
class Summand2D:
    """term(n, k) summed over n >= start_n (inner) and k >= start_k (outer).

    inner_reduction(k) returns the exact inner sum over n for outer index k;
    reduced_tail is the tail class of that 1-D series.
    """

    term: Callable[[np.ndarray, np.ndarray], np.ndarray]
    start_n: int
    start_k: int
    inner_reduction: Optional[Callable[[np.ndarray], np.ndarray]] = None
    reduced_tail: Optional[TailClass] = None
    description: str = ""


@dataclass(frozen=True)
class SumResult:
    value: float
    error_estimate: float
    terms_used: int
    strategy: str


# ---------------------------------------------------------------- helpers


def _partial(term, first: int, last: int) -> tuple[float, float, int]:
    """fsum of term(n), first <= n <= last, plus sum of |term|."""
    parts, mags = [], []
    lo = first
    while lo <= last:
        hi = min(last, lo + CHUNK - 1)
        t = term(np.arange(lo, hi + 1, dtype=float))
        parts.append(math.fsum(t))
        mags.append(float(np.sum(np.abs(t))))
        lo = hi + 1
    return math.fsum(parts), math.fsum(mags), last - first + 1


def pair_expansion(tail: Alternating, start: int) -> AsymSeries:
    """Expansion in m of term(start + 2m) + term(start + 2m + 1)."""
    a = tail.inner.expansion
    sign = -1.0 if start % 2 else 1.0
    return (a.substitute(2.0, start) - a.substitute(2.0, start + 1.0)) * sign


def tail_estimate(s: Summand1D, n: int) -> tuple[float, float]:
    """Analytic estimate of sum_{m > n} term(m) and its truncation error.

    For alternating summands n - start + 1 must be even (whole pairs).
    """
    if isinstance(s.tail, PolyLog):
        return series_tail(s.tail.expansion, n)
    if isinstance(s.tail, Alternating):
        used = n - s.start + 1
        if used % 2:
            raise ValueError("alternating tail needs a whole number of pairs")
        # pairs m = 0 .. used/2 - 1 consumed
        return series_tail(pair_expansion(s.tail, s.start), used // 2 - 1)
    if isinstance(s.tail, Custom):
        return s.tail.tail(n)
    raise TypeError(f"no analytic tail for {type(s.tail).__name__}")


def check_tail_class(s: Summand1D, checkpoints=(10**3, 10**4)) -> bool:
    """Spot-check that |term(2N)/term(N)| matches the declared decay within a factor 4."""
    cls = s.tail.inner if isinstance(s.tail, Alternating) else s.tail
    for n in checkpoints:
        t1, t2 = np.abs(s.term(np.array([float(n), float(2 * n)])))
        if t1 == 0.0:
            # underflow: only a faster-than-any-power class is consistent
            if not (isinstance(cls, Exponential) and t2 == 0.0):
                return False
            continue
        ratio = t2 / t1
        if isinstance(cls, PolyLog):
            expected = 2.0 ** (-cls.power) * (math.log(2 * n) / math.log(n)) ** cls.log_power
            if not expected / 4 <= ratio <= expected * 4:
                return False
        elif isinstance(cls, Exponential):
            if not ratio < 1e-3:
                return False
    return True


# ---------------------------------------------------------------- 1-D


def sum_1d(
    s: Summand1D,
    target_abs_err: float = 1e-10,
    cutoff: int = DEFAULT_CUTOFF,
    budget: int = TERM_BUDGET,
) -> SumResult:
    if target_abs_err < 1e-12:
        raise ValueError("target_abs_err must be >= 1e-12")
    if isinstance(s.tail, Exponential):
        return _sum_exponential(s, target_abs_err, budget)
    n = cutoff
    while True:
        if isinstance(s.tail, Alternating) and (n - s.start + 1) % 2:
            n += 1
        value, mags, used = _partial(s.term, s.start, n)
        tail, tail_err = tail_estimate(s, n)
        total = value + tail
        err = tail_err + 2 * EPS * abs(total) + s.rel_term_error * mags
        if err <= target_abs_err:
            strategy = "paired-analytic-tail" if isinstance(s.tail, Alternating) else "analytic-tail"
            return SumResult(total, err, used, strategy)
        if n * 4 > budget:
            raise NoConvergence(f"error estimate {err:.3g} above target {target_abs_err:.3g}")
        n *= 4


def _sum_exponential(s: Summand1D, target: float, budget: int) -> SumResult:
    parts, mags = [], 0.0
    lo, block = s.start, 64
    while lo - s.start < budget:
        t = s.term(np.arange(lo, lo + block, dtype=float))
        parts.append(math.fsum(t))
        mags += float(np.sum(np.abs(t)))
        lo += block
        last, prev = abs(t[-1]), abs(t[-2])
        if prev > 0 and last < prev:
            r = last / prev
            bound = last * r / (1 - r)
            if last < target / 10 and bound < target / 10:
                total = math.fsum(parts)
                err = bound + 2 * EPS * abs(total) + s.rel_term_error * mags
                return SumResult(total, err, lo - s.start, "direct-geometric-bound")
        elif last == 0.0:
            total = math.fsum(parts)
            return SumResult(total, 2 * EPS * abs(total) + s.rel_term_error * mags, lo - s.start,
                             "direct-geometric-bound")
    raise NoConvergence("exponential summand did not reach target within budget")


# ---------------------------------------------------------------- Euler-Maclaurin with quadrature

_B2 = [float(specfun.bernoulli(2 * j)) / math.factorial(2 * j) for j in (1, 2, 3)]
# stencil step for the odd derivatives
FD_STEP = 0.25
# exp-sinh step of the tail integral; the error estimate reuses every other node
EM_QUAD_STEP = 1.0 / 16.0


def em_tail_batch(f: Callable[[np.ndarray], np.ndarray], n: float) -> tuple[np.ndarray, np.ndarray]:
    """sum_{m >= n} f(m) for smooth, slowly varying f, batched over columns.

    f maps x of shape (P, 1) to values of shape (P, M) (one column per series).
    The integral uses a fixed exp-sinh rule, the odd derivatives central
    differences.  Returns (values, error estimates), each of shape (M,).
    """
    d, w = exp_sinh_rule(EM_QUAD_STEP)
    with np.errstate(all="ignore"):
        fx = f(n + d[:, None])
        fx = np.where(np.isfinite(fx), fx, 0.0)
    wcol = w[:, None]
    integral = np.sum(fx * wcol, axis=0)
    coarse = 2.0 * np.sum((fx * wcol)[::2], axis=0)
    quad_err = np.abs(integral - coarse)
    h = FD_STEP
    fm3, fm2, fm1, f0, fp1, fp2, fp3 = f(n + h * np.arange(-3.0, 4.0)[:, None])
    d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12.0 * h)
    d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2.0 * h**3)
    d5 = (fp3 - 4 * fp2 + 5 * fp1 - 5 * fm1 + 4 * fm2 - fm3) / (2.0 * h**5)
    c1, c3, c5 = -_B2[0] * d1, -_B2[1] * d3, -_B2[2] * d5
    # stencil truncation: h^4 f5 / 30 for d1, h^2 f5 / 4 for d3
    fd_err = _B2[0] * h**4 * np.abs(d5) / 30.0 + _B2[1] * h**2 * np.abs(d5) / 4.0
    value = integral + 0.5 * f0 + c1 + c3 + c5
    err = quad_err + 4 * np.abs(c5) + fd_err + 8 * EPS * (np.abs(integral) + np.abs(f0))
    return value, err


def em_tail(f: Callable[[np.ndarray], np.ndarray], n: float) -> tuple[float, float]:
    """Scalar form of :func:`em_tail_batch` for a single series."""
    v, e = em_tail_batch(f, n)
    return float(v[0]), float(e[0])


def _em_sum(term, start: int, n_direct: int) -> tuple[float, float, int]:
    direct, mags, used = _partial(term, start, start + n_direct - 1)
    tail, err = em_tail(term, start + n_direct)
    value = direct + tail
    return value, err + 8 * EPS * mags, used


def sum_1d_crosscheck(s: Summand1D) -> SumResult:
    """Second, independent evaluation used to validate sum_1d."""
    if isinstance(s.tail, Alternating):
        a = np.abs(s.term(np.arange(s.start, s.start + 120, dtype=float)))
        sign = 1.0 if s.start % 2 == 0 else -1.0
        v1 = sign * specfun.cvz_alternating(a, 60)
        v2 = sign * specfun.cvz_alternating(a, 100)
        err = abs(v1 - v2) + 16 * EPS * float(np.sum(a[:8]))
        return SumResult(v2, err, 100, "cohen-villegas-zagier")
    if isinstance(s.tail, Exponential):
        n1 = _exp_cutoff(s)
        t = s.term(np.arange(s.start, s.start + 2 * n1, dtype=float))
        v1 = math.fsum(t[:n1][::-1])
        v2 = math.fsum(t[::-1])
        err = abs(v2 - v1) + s.rel_term_error * float(np.sum(np.abs(t))) + 2 * EPS * abs(v2)
        return SumResult(v2, err, 2 * n1, "doubled-cutoff")
    v1, e1, _ = _em_sum(s.term, s.start, EM_START)
    v2, e2, used = _em_sum(s.term, s.start, 2 * EM_START)
    return SumResult(v2, e2 + abs(v2 - v1), used, "euler-maclaurin-quadrature")


def _exp_cutoff(s: Summand1D) -> int:
    n = 16
    while abs(float(s.term(np.array([float(s.start + n)]))[0])) > 1e-22 and n < 10**5:
        n *= 2
    return n


# ---------------------------------------------------------------- lemmas


def lemma_partial_fraction(a, b):
    """sum_{n>=1} 1/((n+a)(n+b)) = [psi(1+b) - psi(1+a)]/(b - a); psi'(1+a) when a == b."""
    a_arr = np.asarray(a, dtype=float)
    b_arr = np.asarray(b, dtype=float)
    if np.any(a_arr < 0) or np.any(b_arr < 0):
        raise specfun.DomainError("lemma_partial_fraction needs a, b >= 0")
    a_arr, b_arr = np.broadcast_arrays(a_arr, b_arr)
    same = a_arr == b_arr
    diff = np.where(same, 1.0, b_arr - a_arr)
    out = np.where(
        same,
        specfun.trigamma(1.0 + a_arr),
        (specfun.digamma(1.0 + b_arr) - specfun.digamma(1.0 + a_arr)) / diff,
    )
    return float(out) if out.ndim == 0 else out


def gamma_ratio_series_log(a, b):
    """log of sum_{n>=1} Gamma(n+a)/Gamma(n+b) = Gamma(1+a) / ((b-a-1) Gamma(b)), b > a + 1."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(b - a <= 1):
        raise specfun.DomainError("gamma ratio series needs b > a + 1")
    out = specfun.gamma_ratio_log(1.0 + a, b) - np.log(b - a - 1.0)
    return float(out) if np.ndim(out) == 0 else out


def lemma_gamma_ratio_log(k):
    """log of sum_{n>=1} Gamma(n+k)/Gamma(1+n+2k) = log(Gamma(k)/Gamma(1+2k))."""
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 1):
        raise specfun.DomainError("lemma_gamma_ratio needs k >= 1")
    out = specfun.gamma_ratio_log(k_arr, 1.0 + 2.0 * k_arr)
    return float(out) if np.ndim(out) == 0 else out


def lemma_gamma_ratio(k):
    """sum_{n>=1} Gamma(n+k)/Gamma(1+n+2k) = Gamma(k)/Gamma(1+2k)."""
    out = np.exp(lemma_gamma_ratio_log(k))
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------- 2-D


def sum_2d(s: Summand2D, target_abs_err: float = 1e-9) -> SumResult:
    if target_abs_err < 1e-9:
        raise ValueError("target_abs_err must be >= 1e-9")
    if s.inner_reduction is not None:
        if s.reduced_tail is None:
            raise ValueError("inner_reduction needs reduced_tail")
        reduced = Summand1D(s.inner_reduction, s.start_k, s.reduced_tail, s.description)
        r = sum_1d(reduced, target_abs_err)
        return SumResult(r.value, r.error_estimate, r.terms_used, "inner-reduction+" + r.strategy)
    v1, e1, n1 = _row_sum(s, ROW_TERMS, OUTER_ROWS)
    v2, e2, n2 = _row_sum(s, 2 * ROW_TERMS, 2 * OUTER_ROWS)
    err = e2 + abs(v2 - v1)
    if err > target_abs_err:
        raise NoConvergence(f"2-D error estimate {err:.3g} above target {target_abs_err:.3g}")
    return SumResult(v2, err, n2, "row-euler-maclaurin")


def _rows(s: Summand2D, ks: np.ndarray, row_terms: int) -> tuple[np.ndarray, np.ndarray]:
    """Inner sums over n for each outer index in ks (reals allowed)."""
    kcol = ks[None, :]
    n = np.arange(s.start_n, s.start_n + row_terms, dtype=float)[:, None]
    with np.errstate(all="ignore"):
        block = s.term(n, kcol)
    direct = np.sum(block, axis=0)
    tail, err = em_tail_batch(lambda x: s.term(x, kcol), s.start_n + row_terms)
    err = err + 8 * EPS * np.sum(np.abs(block), axis=0)
    return direct + tail, err


def _row_sum(s: Summand2D, row_terms: int, outer_rows: int) -> tuple[float, float, int]:
    ks = np.arange(s.start_k, s.start_k + outer_rows, dtype=float)
    rows, errs = _rows(s, ks, row_terms)

    def outer(k: np.ndarray) -> np.ndarray:
        flat = k[:, 0]
        ok = np.isfinite(flat) & (flat < 1e150)
        out = np.zeros_like(flat)
        out[ok] = _rows(s, flat[ok], row_terms)[0]
        return out[:, None]

    tail, tail_err = em_tail(outer, s.start_k + outer_rows)
    value = math.fsum(list(rows) + [tail])
    used = outer_rows * row_terms
    return value, math.fsum(errs) + tail_err, used
