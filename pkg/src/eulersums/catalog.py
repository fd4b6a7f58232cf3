"""Registry of the series identities, the general-k generator, and the verifier."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import cache
from typing import Optional, Union

import numpy as np
from scipy.special import gammaln

from . import specfun
from .asymptotic import AsymSeries, harmonic, reciprocal, trigamma_at
from .closed_form import ClosedForm, cf_eval, cf_eval_error, render
from .summation import (
    Alternating,
    Exponential,
    NoConvergence,
    PolyLog,
    Summand1D,
    Summand2D,
    gamma_ratio_series_log,
    lemma_gamma_ratio_log,
    lemma_partial_fraction,
    sum_1d,
    sum_2d,
)

TOL_1D = 1e-9
TOL_EXPONENTIAL = 1e-11
TOL_2D_REDUCED = 1e-8
TOL_2D_ROWS = 1e-7
TOL_THEOREM = 1e-8
THEOREM_KS = range(1, 9)


class UnknownId(KeyError):
    pass


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    lhs: Union[Summand1D, Summand2D]
    rhs: ClosedForm
    anchor: str
    tolerance: float
    dimensionality: int


@dataclass
class VerificationReport:
    id: str
    lhs_numeric: float
    rhs_numeric: float
    abs_diff: float
    tolerance: float
    passed: bool
    terms_used: int
    strategy: str
    wall_time: float
    rhs_text: str = ""
    error_estimate: float = float("nan")
    reason: str = ""


# ---------------------------------------------------------------- closed forms


def Z(m: int, q=1) -> ClosedForm:
    return ClosedForm.zeta(m, q)


def PC(angle, q=1) -> ClosedForm:
    return ClosedForm.pi_cl2(Fraction(angle), q)


def ONE(q=1) -> ClosedForm:
    return ClosedForm.one(q)


def theorem1_closed_form(k: int, alternating: bool = False) -> ClosedForm:
    """Closed form of sum_n (+-1)^n [gamma + psi(1 + k n)] / n^2."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if alternating:
        out = Z(3, Fraction(k * k, 2) - Fraction(9, 8 * k))
        angles = [Fraction(2 * j + 1, k) for j in range(1, k)]
    else:
        out = Z(3, Fraction(k * k, 2) + Fraction(3, 2 * k))
        angles = [Fraction(2 * j, k) for j in range(1, k)]
    for j, a in enumerate(angles, start=1):
        out = out + PC(a, j)
    return out


# ---------------------------------------------------------------- summands

_G = specfun.euler_gamma()


def _h(shift: float, k: float = 1.0):
    """gamma + psi(shift + k n) as a vectorized function of n."""
    return lambda n: _G + specfun.digamma(shift + k * n)


def theorem_summand(k: int, alternating: bool = False) -> Summand1D:
    h = _h(1.0, k)
    expansion = harmonic(k, 1) * AsymSeries.power(2)
    if alternating:
        return Summand1D(
            lambda n: np.where(n % 2 == 0, 1.0, -1.0) * h(n) / n**2,
            1,
            Alternating(PolyLog(2, 1, expansion)),
            f"(-1)^n [gamma + psi(1 + {k}n)] / n^2",
        )
    return Summand1D(lambda n: h(n) / n**2, 1, PolyLog(2, 1, expansion),
                     f"[gamma + psi(1 + {k}n)] / n^2")


def _psi_kernel(kind: str, h_shift: float, expansion_h: AsymSeries) -> Summand1D:
    h = _h(h_shift)
    n1 = AsymSeries.power(1)
    if kind == "n(n+1)":
        return Summand1D(lambda n: h(n) / (n * (n + 1)), 1,
                         PolyLog(2, 1, expansion_h * n1 * reciprocal(1)),
                         f"[gamma + psi({_shift_text(h_shift)})] / (n(n+1))")
    if kind == "n^2(n+1)":
        return Summand1D(lambda n: h(n) / (n * n * (n + 1)), 1,
                         PolyLog(3, 1, expansion_h * AsymSeries.power(2) * reciprocal(1)),
                         f"[gamma + psi({_shift_text(h_shift)})] / (n^2(n+1))")
    if kind == "n(n+1)^2":
        return Summand1D(lambda n: h(n) / (n * (n + 1) ** 2), 1,
                         PolyLog(3, 1, expansion_h * n1 * reciprocal(1, 2)),
                         f"[gamma + psi({_shift_text(h_shift)})] / (n(n+1)^2)")
    raise ValueError(kind)


def _shift_text(shift: float) -> str:
    return "n" if shift == 0 else f"{int(shift)}+n"


def _trigamma_sum(shift: float, rational_kernel: bool) -> Summand1D:
    tg = lambda n: specfun.trigamma(shift + n)  # noqa: E731
    exp_t = trigamma_at(1, shift)
    label = f"psi'({_shift_text(shift)})"
    if rational_kernel:
        return Summand1D(lambda n: tg(n) / (n * (n + 1)), 1,
                         PolyLog(3, 0, exp_t * AsymSeries.power(1) * reciprocal(1)),
                         f"{label} / (n(n+1))")
    return Summand1D(lambda n: tg(n) / n, 1, PolyLog(2, 0, exp_t * AsymSeries.power(1)),
                     f"{label} / n")


def _bilinear(s1: float, s2: float) -> Summand1D:
    h1, h2 = _h(s1), _h(s2)
    expansion = harmonic(1, s1) * harmonic(1, s2) * AsymSeries.power(1) * reciprocal(1)
    return Summand1D(
        lambda n: h1(n) * h2(n) / (n * (n + 1)),
        1,
        PolyLog(2, 2, expansion),
        f"[gamma + psi({_shift_text(s1)})][gamma + psi({_shift_text(s2)})] / (n(n+1))",
    )


def _gamma_square_ratio(n):
    # Gamma(n)^2 / Gamma(2n) / n^2
    return np.exp(specfun.gamma_ratio_log(n, 2 * n) + specfun.gamma_ratio_log(n, 1.0)) / n**2


def _gamma_series(alternating: bool) -> Summand1D:
    if alternating:
        return Summand1D(lambda n: np.where(n % 2 == 0, 1.0, -1.0) * _gamma_square_ratio(n), 1,
                         Exponential(), "(-1)^n Gamma(n)^2 / (n^2 Gamma(2n))")
    return Summand1D(_gamma_square_ratio, 1, Exponential(), "Gamma(n)^2 / (n^2 Gamma(2n))")


def _two_d() -> list[tuple[str, Summand2D, ClosedForm, float, str]]:
    k_harm = harmonic(1, 1)
    p2 = AsymSeries.power(2)

    d1 = Summand2D(
        lambda n, k: 1.0 / (n * k * (n + k)), 1, 1,
        inner_reduction=lambda k: lemma_partial_fraction(0.0, k) / k,
        reduced_tail=PolyLog(2, 1, k_harm * p2),
        description="1 / (n k (n+k)), n, k >= 1",
    )
    d2 = Summand2D(
        lambda n, k: 1.0 / (k * (n + k) * (1 + n + k)), 0, 1,
        inner_reduction=lambda k: lemma_partial_fraction(k - 1.0, k) / k,
        reduced_tail=PolyLog(2, 0, p2),
        description="1 / (k (n+k) (1+n+k)), n >= 0, k >= 1",
    )
    d3 = Summand2D(
        lambda n, k: np.exp(gammaln(n) + gammaln(k) - gammaln(1 + n + k)) / k, 1, 1,
        inner_reduction=lambda k: np.exp(gammaln(k) + gamma_ratio_series_log(0.0, 1.0 + k)) / k,
        reduced_tail=PolyLog(3, 0, AsymSeries.power(3)),
        description="Gamma(n) Gamma(k) / (k Gamma(1+n+k)), n, k >= 1",
    )
    d4 = Summand2D(
        lambda n, k: np.exp(gammaln(2 * k) + gammaln(n + k) - gammaln(1 + n + 2 * k) - gammaln(k + 1)),
        1, 1,
        inner_reduction=lambda k: np.exp(gammaln(2 * k) - gammaln(k + 1) + lemma_gamma_ratio_log(k)),
        reduced_tail=PolyLog(2, 0, p2 * 0.5),
        description="Gamma(2k) Gamma(n+k) / (k! Gamma(1+n+2k)), n, k >= 1",
    )
    d5 = Summand2D(
        lambda n, k: (_G + specfun.digamma(1 + k)) / (k * (n + k) * (1 + n + k)), 0, 1,
        inner_reduction=lambda k: (_G + specfun.digamma(1 + k)) * lemma_partial_fraction(k - 1.0, k) / k,
        reduced_tail=PolyLog(2, 1, k_harm * p2),
        description="[gamma + psi(1+k)] / (k (n+k) (1+n+k)), n >= 0, k >= 1",
    )
    d6 = Summand2D(
        lambda n, k: (_G + specfun.digamma(1 + n)) / (k * (n + k) * (1 + n + k)), 0, 1,
        description="[gamma + psi(1+n)] / (k (n+k) (1+n+k)), n >= 0, k >= 1",
    )
    d7 = Summand2D(
        lambda n, k: (_G + specfun.digamma(1 + n + k)) / (k * (n + k) * (1 + n + k)), 0, 1,
        description="[gamma + psi(1+n+k)] / (k (n+k) (1+n+k)), n >= 0, k >= 1",
    )
    d8 = Summand2D(
        lambda n, k: (_G + specfun.digamma(1 + n + 2 * k)) / (k * (n + k) * (1 + n + k)), 0, 1,
        description="[gamma + psi(1+n+2k)] / (k (n+k) (1+n+k)), n >= 0, k >= 1",
    )
    red, rows = TOL_2D_REDUCED, TOL_2D_ROWS
    plain = "double series without psi"
    with_psi = "double series with psi"
    return [
        ("D1", d1, Z(3, 2), red, plain),
        ("D2", d2, Z(2), red, plain),
        ("D3", d3, Z(3), red, plain),
        ("D4", d4, Z(2, Fraction(1, 2)), red, plain),
        ("D5", d5, Z(3, 2), red, with_psi),
        ("D6", d6, Z(3, 2), rows, with_psi),
        ("D7", d7, Z(3, 3), rows, with_psi),
        ("D8", d8, Z(3, Fraction(7, 2)), rows, with_psi),
    ]


def build_catalog() -> list[Identity]:
    out: list[Identity] = []

    def add(id_, lhs, rhs, anchor, tol):
        dim = 2 if isinstance(lhs, Summand2D) else 1
        out.append(Identity(id_, lhs.description, lhs, rhs, anchor, tol, dim))

    euler = "Euler-type sums, [gamma + psi(1 + k n)] / n^2"
    third, half = Fraction(1, 3), Fraction(1, 2)
    add("T1.k1", theorem_summand(1), Z(3, 2), euler, TOL_1D)
    add("T1.k2", theorem_summand(2), Z(3, Fraction(11, 4)), euler, TOL_1D)
    add("T1.k3", theorem_summand(3), Z(3, 5) + PC(third, Fraction(-2, 3)), euler, TOL_1D)
    add("T1.k4", theorem_summand(4), Z(3, Fraction(67, 8)) + PC(half, -2), euler, TOL_1D)
    add("T1.k6", theorem_summand(6), Z(3, Fraction(73, 4)) + PC(third, Fraction(-16, 3)), euler, TOL_1D)
    alt = "alternating Euler-type sums"
    add("A1.k1", theorem_summand(1, True), Z(3, Fraction(-5, 8)), alt, TOL_1D)
    add("A1.k2", theorem_summand(2, True), Z(3, Fraction(23, 16)) + PC(half, -1), alt, TOL_1D)
    add("A1.k3", theorem_summand(3, True), Z(3, Fraction(33, 8)) + PC(third, -2), alt, TOL_1D)

    h1 = harmonic(1, 1)
    rat = "rational kernels times gamma + psi(1+n)"
    add("R1", _psi_kernel("n(n+1)", 1, h1), Z(2), rat, TOL_1D)
    add("R2", _psi_kernel("n^2(n+1)", 1, h1), Z(3, 2) - Z(2), rat, TOL_1D)
    add("R3", _psi_kernel("n(n+1)^2", 1, h1), Z(2) - Z(3), rat, TOL_1D)

    tri = "trigamma sums"
    add("P1", _trigamma_sum(0, False), Z(3, 2), tri, TOL_1D)
    add("P2", _trigamma_sum(1, False), Z(3), tri, TOL_1D)
    add("P3", _trigamma_sum(0, True), ONE(), tri, TOL_1D)
    add("P4", _trigamma_sum(1, True), Z(2) - Z(3), tri, TOL_1D)

    bil = "bilinear digamma sums over n(n+1)"
    add("B1", _bilinear(0, 0), Z(2) + ONE(), bil, TOL_1D)
    add("B2", _bilinear(0, 1), Z(3) + Z(2), bil, TOL_1D)
    add("B3", _bilinear(0, 2), ONE(3), bil, TOL_1D)
    add("B4", _bilinear(1, 1), Z(3, 3), bil, TOL_1D)
    add("B5", _bilinear(1, 2), Z(3, 2) + Z(2), bil, TOL_1D)
    add("B6", _bilinear(2, 2), Z(2) + ONE(3), bil, TOL_1D)

    gam = "central binomial (Gamma-ratio) sums"
    add("G1", _gamma_series(False), Z(3, Fraction(-8, 3)) + PC(Fraction(1, 3), Fraction(4, 3)), gam,
        TOL_EXPONENTIAL)
    add("G2", _gamma_series(True), Z(3, Fraction(-4, 5)), gam, TOL_EXPONENTIAL)

    for id_, lhs, rhs, tol, anchor in _two_d():
        add(id_, lhs, rhs, anchor, tol)
    return out


@cache
def _index() -> dict[str, Identity]:
    return {ident.id: ident for ident in build_catalog()}


def catalog_ids() -> list[str]:
    return list(_index())


def get(id_: str) -> Identity:
    try:
        return _index()[id_]
    except KeyError:
        raise UnknownId(id_) from None


def theorem_ids() -> list[str]:
    return [f"theorem.k{k}" + (".alt" if alt else "") for k in THEOREM_KS for alt in (False, True)]


def _parse_theorem_id(id_: str) -> tuple[int, bool]:
    parts = id_.split(".")
    try:
        k = int(parts[1][1:])
    except (IndexError, ValueError):
        raise UnknownId(id_) from None
    alt = len(parts) == 3 and parts[2] == "alt"
    if parts[0] != "theorem" or not parts[1].startswith("k") or len(parts) > 3 or (len(parts) == 3 and not alt):
        raise UnknownId(id_)
    return k, alt


# ---------------------------------------------------------------- verification


def _run(id_: str, lhs, rhs: ClosedForm, tol: float) -> VerificationReport:
    start = time.perf_counter()
    rhs_value = cf_eval(rhs)
    try:
        if isinstance(lhs, Summand2D):
            r = sum_2d(lhs, max(tol / 10, 1e-9))
        else:
            r = sum_1d(lhs, max(tol / 10, 1e-12))
    except NoConvergence as exc:
        return VerificationReport(id_, float("nan"), rhs_value, float("nan"), tol, False, 0, "failed",
                                  time.perf_counter() - start, render(rhs), reason=str(exc))
    diff = abs(r.value - rhs_value)
    return VerificationReport(
        id_, r.value, rhs_value, diff, tol, diff <= tol, r.terms_used, r.strategy,
        time.perf_counter() - start, render(rhs), r.error_estimate + cf_eval_error(rhs),
    )


def verify(id_: str, tolerance_override: Optional[float] = None) -> VerificationReport:
    if id_.startswith("theorem."):
        k, alt = _parse_theorem_id(id_)
        tol = tolerance_override if tolerance_override is not None else TOL_THEOREM
        return _run(id_, theorem_summand(k, alt), theorem1_closed_form(k, alt), tol)
    ident = get(id_)
    tol = tolerance_override if tolerance_override is not None else ident.tolerance
    return _run(id_, ident.lhs, ident.rhs, tol)


def _verify_pair(args: tuple[str, Optional[float]]) -> VerificationReport:
    return verify(*args)


def verify_all(
    parallel: bool = False, jobs: Optional[int] = None, tolerance_override: Optional[float] = None
) -> list[VerificationReport]:
    """All catalog identities followed by the general-k rows, in a fixed order."""
    ids = catalog_ids() + theorem_ids()
    work = [(i, tolerance_override) for i in ids]
    if parallel and (jobs is None or jobs > 1):
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_verify_pair, work))
    return [_verify_pair(w) for w in work]


def theorem_coherence() -> list[tuple[str, bool]]:
    """Exact comparison of generated closed forms against the catalog entries."""
    out = []
    for k in (1, 2, 3, 4, 6):
        out.append((f"T1.k{k}", theorem1_closed_form(k) == get(f"T1.k{k}").rhs))
    for k in (1, 2, 3):
        out.append((f"A1.k{k}", theorem1_closed_form(k, True) == get(f"A1.k{k}").rhs))
    return out


def export_json() -> str:
    rows = [
        {
            "id": i.id,
            "description": i.description,
            "rhs": render(i.rhs),
            "anchor": i.anchor,
            "tolerance": i.tolerance,
            "dimensionality": i.dimensionality,
        }
        for i in build_catalog()
    ]
    return json.dumps(rows, indent=2)


def report_dict(r: VerificationReport) -> dict:
    return asdict(r)
