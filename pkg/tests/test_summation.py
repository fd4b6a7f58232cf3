import math

import numpy as np
import pytest

from eulersums import catalog, specfun
from eulersums.asymptotic import AsymSeries, harmonic, reciprocal
from eulersums.summation import (
    EPS,
    Alternating,
    Custom,
    Exponential,
    NoConvergence,
    PolyLog,
    Summand1D,
    Summand2D,
    _partial,
    check_tail_class,
    lemma_gamma_ratio,
    lemma_gamma_ratio_log,
    lemma_partial_fraction,
    sum_1d,
    sum_1d_crosscheck,
    sum_2d,
    tail_estimate,
)

ZETA2 = 1.6449340668482264
ZETA3 = 1.2020569031595943
P2 = AsymSeries.power(2)

inv_sq = Summand1D(lambda n: 1.0 / n**2, 1, PolyLog(2, 0, P2), "1/n^2")
telescoping = Summand1D(lambda n: 1.0 / (n * (n + 1)), 1,
                        PolyLog(2, 0, AsymSeries.power(1) * reciprocal(1)), "1/(n(n+1))")
alt_inv_sq = Summand1D(lambda n: np.where(n % 2 == 0, 1.0, -1.0) / n**2, 1,
                       Alternating(PolyLog(2, 0, P2)), "(-1)^n/n^2")


def one_d_summands():
    return [i for i in catalog.build_catalog() if i.dimensionality == 1]


class TestSum1D:
    def test_zeta2(self):
        r = sum_1d(inv_sq, 1e-10)
        assert abs(r.value - ZETA2) <= 1e-10
        assert abs(r.value - ZETA2) <= r.error_estimate
        assert r.strategy == "analytic-tail"

    def test_telescoping(self):
        r = sum_1d(telescoping, 1e-12)
        assert abs(r.value - 1.0) <= 1e-12

    def test_euler_sum(self):
        r = sum_1d(catalog.theorem_summand(1), 1e-10)
        assert abs(r.value - 2 * ZETA3) <= 1e-9

    def test_alternating(self):
        r = sum_1d(alt_inv_sq, 1e-11)
        assert abs(r.value + ZETA2 / 2) <= 1e-11
        assert r.strategy == "paired-analytic-tail"

    def test_start_zero_alternating(self):
        s = Summand1D(lambda n: np.where(n % 2 == 0, 1.0, -1.0) / (n + 1) ** 2, 0,
                      Alternating(PolyLog(2, 0, reciprocal(1, 2))))
        assert abs(sum_1d(s, 1e-11).value - ZETA2 / 2) <= 1e-11

    def test_exponential(self):
        s = Summand1D(lambda n: 0.5**n, 1, Exponential())
        r = sum_1d(s, 1e-12)
        assert abs(r.value - 1.0) <= 1e-15
        assert r.strategy == "direct-geometric-bound"

    def test_custom_tail(self):
        s = Summand1D(lambda n: 1.0 / (n * (n + 1)), 1, Custom(lambda n: (1.0 / (n + 1), 0.0), "exact"))
        assert abs(sum_1d(s, 1e-12).value - 1.0) <= 1e-13

    def test_target_floor(self):
        with pytest.raises(ValueError):
            sum_1d(inv_sq, 1e-13)

    def test_no_convergence(self):
        # the tail needs n^-1 terms the expansion does not carry: error estimate can't shrink
        bad = Summand1D(lambda n: 1.0 / n**2, 1, Custom(lambda n: (0.0, 1.0 / n), "crude"))
        with pytest.raises(NoConvergence):
            sum_1d(bad, 1e-10, cutoff=1000, budget=10**5)


class TestCrosscheck:
    def test_alternating_zeta(self):
        r = sum_1d_crosscheck(alt_inv_sq)
        assert abs(r.value + ZETA2 / 2) <= 1e-10
        assert r.strategy == "cohen-villegas-zagier"

    def test_agrees_with_sum_1d(self):
        s = catalog.theorem_summand(2)
        a, b = sum_1d(s, 1e-10), sum_1d_crosscheck(s)
        assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate
        assert b.strategy == "euler-maclaurin-quadrature"

    def test_gamma_ratio_series(self):
        s = catalog.get("G1").lhs
        r = sum_1d_crosscheck(s)
        assert abs(r.value - 1.04589238426667) <= 1e-11
        assert r.strategy == "doubled-cutoff"


class TestLemmas:
    def test_partial_fraction(self):
        assert abs(lemma_partial_fraction(0.0, 1.0) - 1.0) <= 1e-15
        assert abs(lemma_partial_fraction(0.0, 0.0) - ZETA2) <= 1e-15
        assert abs(lemma_partial_fraction(2.5, 2.5) - specfun.trigamma(3.5)) <= 1e-15
        assert abs(lemma_partial_fraction(1.0, 3.0) - 5.0 / 12) <= 1e-15

    def test_partial_fraction_brute_force(self):
        n = 10**6
        k = np.arange(1, n + 1, dtype=float)
        brute = math.fsum(1.0 / ((k + 1) * (k + 3)))
        assert abs(brute - 5.0 / 12) <= 1e-6 + 1.0 / n

    def test_partial_fraction_array_and_domain(self):
        out = lemma_partial_fraction(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
        assert np.allclose(out, [1.0, specfun.trigamma(2.0)], rtol=0, atol=1e-15)
        with pytest.raises(specfun.DomainError):
            lemma_partial_fraction(-1.0, 1.0)

    def test_gamma_ratio(self):
        assert abs(lemma_gamma_ratio(1) - 0.5) <= 1e-15
        assert abs(lemma_gamma_ratio(2) - 1.0 / 24) <= 1e-16
        with pytest.raises(specfun.DomainError):
            lemma_gamma_ratio(0)

    def test_gamma_ratio_brute_force(self):
        n = np.arange(1, 10**5 + 1, dtype=float)
        terms = np.exp(specfun.gamma_ratio_log(n + 5, n + 11))
        brute = math.fsum(terms)
        assert abs(brute - lemma_gamma_ratio(5)) <= 1e-8

    def test_reduction_algebra(self):
        # Gamma(2k) Gamma(k) / (k! Gamma(1+2k)) = 1/(2k^2)
        for k in range(1, 21):
            v = math.exp(math.lgamma(2 * k) - math.lgamma(k + 1) + lemma_gamma_ratio_log(k))
            assert abs(v * 2 * k * k - 1) <= 1e-13


class TestSum2D:
    def test_reduced_telescoping(self):
        r = sum_2d(catalog.get("D2").lhs, 1e-9)
        assert abs(r.value - ZETA2) <= 1e-8
        assert r.strategy.startswith("inner-reduction")

    def test_rows_without_reduction(self):
        s = Summand2D(lambda n, k: 1.0 / (n * k * (n + k)), 1, 1)
        r = sum_2d(s, 1e-9)
        assert abs(r.value - 2 * ZETA3) <= 1e-7
        assert abs(r.value - 2 * ZETA3) <= r.error_estimate
        assert r.strategy == "row-euler-maclaurin"

    def test_gamma_ratio_reduction(self):
        r = sum_2d(catalog.get("D4").lhs, 1e-9)
        assert abs(r.value - ZETA2 / 2) <= 1e-8

    def test_reduction_needs_tail(self):
        s = Summand2D(lambda n, k: 1.0 / (n * k * (n + k)), 1, 1, inner_reduction=lambda k: k)
        with pytest.raises(ValueError):
            sum_2d(s)

    def test_target_floor(self):
        with pytest.raises(ValueError):
            sum_2d(catalog.get("D2").lhs, 1e-10)

    def test_deterministic(self):
        s = catalog.get("D8").lhs
        assert sum_2d(s, 1e-9) == sum_2d(s, 1e-9)

    def test_d5_matches_theorem_k1(self):
        d5 = sum_2d(catalog.get("D5").lhs, 1e-9).value
        t1 = sum_1d(catalog.theorem_summand(1), 1e-10).value
        assert abs(d5 - t1) <= 1e-8


# ---------------------------------------------------------------- properties over the catalog


@pytest.mark.parametrize("ident", one_d_summands(), ids=lambda i: i.id)
def test_declared_tail_class(ident):
    assert check_tail_class(ident.lhs)


def test_tail_class_mismatch_detected():
    assert not check_tail_class(Summand1D(lambda n: 1.0 / n**5, 1, PolyLog(2, 0, P2)))
    assert not check_tail_class(Summand1D(lambda n: 1.0 / n**2, 1, Exponential()))


@pytest.mark.parametrize("ident", [i for i in one_d_summands() if not isinstance(i.lhs.tail, Exponential)],
                         ids=lambda i: i.id)
@pytest.mark.parametrize("n", [10**3, 10**4, 10**5])
def test_tail_soundness(ident, n):
    s = ident.lhs
    if isinstance(s.tail, Alternating) and (n - s.start + 1) % 2:
        n += 1
    t1, e1 = tail_estimate(s, n)
    t4, e4 = tail_estimate(s, 4 * n)
    block, mags, _ = _partial(s.term, n + 1, 4 * n)
    defect = abs(block + t4 - t1)
    rounding = s.rel_term_error * mags + 4 * EPS * (abs(t1) + abs(t4) + abs(block))
    assert defect <= 2 * (e1 + e4) + rounding


@pytest.mark.parametrize("ident", one_d_summands(), ids=lambda i: i.id)
def test_strategy_agreement(ident):
    a = sum_1d(ident.lhs, max(ident.tolerance / 10, 1e-12))
    b = sum_1d_crosscheck(ident.lhs)
    assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate


def _value(id_):
    ident = catalog.get(id_)
    return sum_1d(ident.lhs, 1e-11).value


def test_index_shift_trigamma():
    # psi'(n) = psi'(1+n) + 1/n^2
    assert abs(_value("P1") - _value("P2") - ZETA3) <= 1e-9
    # P3 - P4 = sum 1/(n^3 (n+1)) = zeta(3) - zeta(2) + 1
    assert abs(_value("P3") - _value("P4") - (ZETA3 - ZETA2 + 1)) <= 1e-9


def test_index_shift_bilinear():
    # psi(2+n) = psi(1+n) + 1/(n+1) and psi(1+n) = psi(n) + 1/n
    assert abs(_value("B5") - _value("B4") - _value("R3")) <= 1e-9
    assert abs(_value("B4") - _value("B2") - _value("R2")) <= 1e-9
    r2_shifted = _value("R2") - (ZETA3 - ZETA2 + 1)
    assert abs(_value("B2") - _value("B1") - r2_shifted) <= 1e-9


def test_harmonic_expansion_is_summand_expansion():
    s = catalog.theorem_summand(3)
    for n in (1e3, 1e4):
        assert abs(s.tail.expansion.evaluate(n) - s.term(np.array([n]))[0]) <= 1e-20
    assert harmonic(3, 1).max_log() == 1
