from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest

from catalan_series import DomainError, UnsupportedSeriesError, term_exact
from catalan_series.asymptotics import (
    central_binomial_estimate,
    digits_per_term,
    nth_term_exact_leading,
    nth_term_paper_estimate,
    predict_terms_for_digits,
    stirling_factorial,
    term_estimate,
    to_scientific,
)
from catalan_series.engine import terms_needed
from catalan_series.kernels import get_spec
from catalan_series.precision import fraction_to_mpf

from conftest import GEOMETRIC_IDS


def rel_err(estimate, exact: int | Fraction) -> float:
    with mpmath.workdps(40):
        ex = fraction_to_mpf(Fraction(exact))
        return float(abs(estimate - ex) / ex)


def summand(series: str, n: int) -> Fraction:
    """|t(n)| with the scalar prefactor divided out."""
    return abs(term_exact(series, n) / get_spec(series).scalar)


def test_stirling_n1():
    with mpmath.workdps(30):
        direct = mpmath.sqrt(2 * mpmath.pi * mpmath.mpf(7) / 6) / mpmath.e
    assert float(stirling_factorial(1)) == pytest.approx(float(direct), rel=1e-12)
    assert float(stirling_factorial(1)) == pytest.approx(0.996022, abs=1e-6)


@pytest.mark.parametrize("n, bound", [(10, 1e-3), (100, 1e-5)])
def test_stirling_examples(n, bound):
    assert rel_err(stirling_factorial(n), factorial(n)) < bound


def test_stirling_accuracy_improves():
    errs = [rel_err(stirling_factorial(n), factorial(n)) for n in range(5, 201)]
    assert max(errs) < 1e-3
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_stirling_no_overflow():
    x = stirling_factorial(10**6)
    assert mpmath.isfinite(x) and x > mpmath.mpf(10) ** 5_000_000


@pytest.mark.parametrize("n, bound", [(10, 1.5e-4), (1, 2e-2), (50, 1e-4)])
def test_central_binomial_examples(n, bound):
    assert rel_err(central_binomial_estimate(n), comb(2 * n, n)) < bound


def test_central_binomial_n10_value():
    assert float(central_binomial_estimate(10)) == pytest.approx(184777.2, abs=0.1)


def test_estimates_reject_zero():
    with pytest.raises(DomainError):
        stirling_factorial(0)
    with pytest.raises(DomainError):
        central_binomial_estimate(0)


@pytest.mark.parametrize(
    "series, expected",
    [
        ("theorem1", (5 / 3**0.5) / (2**30 * 21**0.5)),
        ("ramanujan", 3 / (2**20 * 21 * 121**0.5)),
        ("lupas", 5 * 121**0.5 * 61 / 2**19 / 100),
    ],
)
def test_paper_estimate_plug_in(series, expected):
    assert float(nth_term_paper_estimate(series, 10)) == pytest.approx(expected, rel=1e-12)


def test_paper_estimate_magnitudes():
    assert float(nth_term_paper_estimate("theorem1", 10)) == pytest.approx(5.86e-10, rel=1e-2)
    assert float(nth_term_paper_estimate("ramanujan", 10)) == pytest.approx(1.24e-8, rel=1e-2)
    assert float(nth_term_paper_estimate("lupas", 10)) == pytest.approx(6.4e-5, rel=1e-2)


@pytest.mark.parametrize("series", ["sun", "beta2_naive"])
def test_paper_estimate_unavailable(series):
    with pytest.raises(UnsupportedSeriesError):
        nth_term_paper_estimate(series, 10)


@pytest.mark.parametrize("series, n, tol", [("theorem1", 50, 0.05), ("sun", 50, 0.05), ("ramanujan", 100, 0.02)])
def test_exact_leading_examples(series, n, tol):
    assert rel_err(nth_term_exact_leading(series, n), abs(term_exact(series, n))) < tol


def test_exact_leading_consistency(geometric_id):
    for n in range(20, 501):
        with mpmath.workdps(30):
            r = nth_term_exact_leading(geometric_id, n) / fraction_to_mpf(abs(term_exact(geometric_id, n)))
        assert 0.9 <= r <= 1.1


@pytest.mark.parametrize("series", ["ramanujan", "lupas", "theorem1"])
def test_quoted_form_within_factor_four(series):
    c = abs(get_spec(series).scalar)
    for n in range(10, 101):
        paper = nth_term_paper_estimate(series, n)
        with mpmath.workdps(30):
            vs_leading = paper / (nth_term_exact_leading(series, n) / fraction_to_mpf(c))
            vs_true = paper / fraction_to_mpf(summand(series, n))
        assert 0.25 <= vs_leading <= 4
        assert 0.25 <= vs_true <= 4


def test_term_estimate_record():
    est = term_estimate("sun", 30)
    assert est.paper_form is None and est.exact_leading > 0
    est = term_estimate("theorem1", 30)
    assert est.paper_form > 0 and est.exact_leading > 0


@pytest.mark.parametrize(
    "series, expected",
    [("theorem1", 0.90309), ("sun", 0.90309), ("ramanujan", 0.60206), ("lupas", 0.60206)],
)
def test_digits_per_term(series, expected):
    assert digits_per_term(series) == pytest.approx(expected, abs=1e-5)


def test_digits_per_term_rejects_naive():
    with pytest.raises(UnsupportedSeriesError):
        digits_per_term("beta2_naive")


@pytest.mark.parametrize("series, D, N", [("theorem1", 906, 1000), ("ramanujan", 307, 500)])
def test_predictor_matches_table_rows(series, D, N):
    assert abs(predict_terms_for_digits(series, D) - N) <= 5


@pytest.mark.parametrize("series, D", [("theorem1", 900), ("ramanujan", 300)])
def test_predictor_against_exact_scan(series, D):
    exact = terms_needed(series, Fraction(1, 10**D))
    assert abs(predict_terms_for_digits(series, D) - exact) <= 3


def test_predictor_small():
    n = predict_terms_for_digits("theorem1", 1)
    assert n <= 4
    assert float(abs(term_exact("theorem1", n + 1))) < 0.1


@pytest.mark.parametrize("D", [20, 50, 100])
def test_predictor_soundness(geometric_id, D):
    exact = terms_needed(geometric_id, Fraction(1, 10**D))
    assert abs(exact - predict_terms_for_digits(geometric_id, D)) <= 3


def test_to_scientific_extended_range():
    tiny = nth_term_exact_leading("theorem1", 1001)
    mant, exp10 = to_scientific(tiny)
    assert exp10 == -906 and 1 <= mant < 10
    with mpmath.workdps(20):
        assert to_scientific(mpmath.mpf("9.96e-3")) == (1.0, -2)
        assert to_scientific(mpmath.mpf("2.98e-906")) == (3.0, -906)
