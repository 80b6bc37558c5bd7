"""Leading-order size of the n-th term of each kernel.

All estimates are formed in log space and returned as 53-bit ``mpmath.mpf``
values, whose exponent range is unbounded, so magnitudes such as 1e-906
neither underflow nor lose their mantissa.  :func:`to_scientific` splits
such a value into a (mantissa, decimal exponent) pair for display.

Two families are provided.  ``nth_term_paper_estimate`` evaluates the
simplified closed forms quoted for Ramanujan's, Lupas' and the 8^-n series;
these drop bounded constant factors and describe the summand *without* its
scalar prefactor.  ``nth_term_exact_leading`` keeps every constant and
estimates the full signed-term magnitude, prefactor included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import DomainError, UnsupportedSeriesError
from .kernels import SeriesId, SeriesSpec, get_spec

_LN10 = math.log(10)
_LN2 = math.log(2)


def _to_mpf(log_value: float) -> mpmath.mpf:
    with mpmath.workprec(53):
        return mpmath.exp(mpmath.mpf(log_value))


def to_scientific(x: mpmath.mpf, sig: int = 2) -> tuple[float, int]:
    """Split a positive value into (mantissa in [1, 10), decimal exponent)."""
    if x <= 0:
        raise ValueError("to_scientific expects a positive value")
    bits = x._mpf_[3] if isinstance(x, mpmath.mpf) else 53
    with mpmath.workprec(max(64, bits)):
        exp10 = int(mpmath.floor(mpmath.log10(x)))
        mant = float(x / mpmath.mpf(10) ** exp10)
    if mant >= 10:
        mant, exp10 = mant / 10, exp10 + 1
    elif mant < 1:
        mant, exp10 = mant * 10, exp10 - 1
    mant = round(mant, sig - 1)
    if mant >= 10:
        mant, exp10 = round(mant / 10, sig - 1), exp10 + 1
    return mant, exp10


def _ln_stirling(n: int) -> float:
    return n * math.log(n) - n + 0.5 * math.log(2 * math.pi * (n + 1 / 6))


def _ln_central_binomial(n: int) -> float:
    return (2 * n * _LN2 + 0.5 * math.log(2 * n + 1 / 6)
            - 0.5 * math.log(2 * math.pi) - math.log(n + 1 / 6))


def stirling_factorial(n: int) -> mpmath.mpf:
    """(n/e)^n sqrt(2 pi (n + 1/6))."""
    if n < 1:
        raise DomainError(f"stirling_factorial needs n >= 1, got {n}")
    return _to_mpf(_ln_stirling(n))


def central_binomial_estimate(n: int) -> mpmath.mpf:
    """4^n sqrt(2n + 1/6) / (sqrt(2 pi) (n + 1/6)), the Stirling-based binom(2n, n)."""
    if n < 1:
        raise DomainError(f"central_binomial_estimate needs n >= 1, got {n}")
    return _to_mpf(_ln_central_binomial(n))


def _ln_binom_or_one(n: int) -> float:
    # binom(0, 0) = 1 exactly; the estimate is only defined for n >= 1.
    return 0.0 if n == 0 else _ln_central_binomial(n)


def _geometric_spec(series: SeriesId | str) -> SeriesSpec:
    spec = get_spec(series)
    if not spec.geometric:
        raise UnsupportedSeriesError(f"{spec.id.value} has no geometric convergence rate")
    return spec


def _ln_exact_leading(spec: SeriesSpec, n: int) -> float:
    lb = _ln_binom_or_one(n)
    s = spec.id
    if s is SeriesId.RAMANUJAN:
        v = -2 * math.log(2 * n + 1) - lb
    elif s is SeriesId.LUPAS:
        v = (8 * n * _LN2 + math.log(abs(40 * n * n - 24 * n + 3)) - 3 * math.log(n)
             - math.log(2 * n - 1) - lb - 2 * _ln_binom_or_one(2 * n))
    elif s is SeriesId.SUN:
        v = math.log(3 * n - 1) + 3 * n * _LN2 - 3 * math.log(n) - 3 * lb
    else:
        v = math.log(3 * n + 2) + 3 * n * _LN2 - 3 * math.log(2 * n + 1) - 3 * lb
    return v + math.log(abs(spec.scalar))


def nth_term_exact_leading(series: SeriesId | str, n: int) -> mpmath.mpf:
    """|t(n)| with every binomial replaced by its Stirling estimate."""
    spec = _geometric_spec(series)
    if n < spec.start_index:
        raise DomainError(f"{spec.id.value}: n={n} below start index {spec.start_index}")
    return _to_mpf(_ln_exact_leading(spec, n))


def nth_term_paper_estimate(series: SeriesId | str, n: int) -> mpmath.mpf:
    """Simplified magnitude of the summand (scalar prefactor excluded).

    Only Ramanujan's, Lupas' and the theorem1 series have such a form.
    """
    spec = get_spec(series)
    if spec.id not in (SeriesId.RAMANUJAN, SeriesId.LUPAS, SeriesId.THEOREM1):
        raise UnsupportedSeriesError(f"no simplified estimate for {spec.id.value}")
    if n < max(spec.start_index, 1):
        raise DomainError(f"{spec.id.value}: n={n} too small for the simplified estimate")
    if spec.id is SeriesId.RAMANUJAN:
        v = math.log(3) - 2 * n * _LN2 - math.log(2 * n + 1) - 0.5 * math.log(12 * n + 1)
    elif spec.id is SeriesId.LUPAS:
        v = (math.log(5) + 0.5 * math.log(12 * n + 1) + math.log(6 * n + 1)
             - (2 * n - 1) * _LN2 - 2 * math.log(n))
    else:
        v = math.log(5 / math.sqrt(3)) - 3 * n * _LN2 - 0.5 * math.log(2 * n + 1)
    return _to_mpf(v)


@dataclass(frozen=True)
class TermEstimate:
    id: SeriesId
    n: int
    paper_form: mpmath.mpf | None
    exact_leading: mpmath.mpf


def term_estimate(series: SeriesId | str, n: int) -> TermEstimate:
    spec = _geometric_spec(series)
    paper = None
    if spec.id is not SeriesId.SUN and n >= 1:
        paper = nth_term_paper_estimate(spec.id, n)
    return TermEstimate(spec.id, n, paper, nth_term_exact_leading(spec.id, n))


def digits_per_term(series: SeriesId | str) -> float:
    """Decimal digits gained per term, log10 of the reciprocal geometric ratio."""
    spec = _geometric_spec(series)
    rho = spec.geometric_limit
    return math.log10(rho.denominator) - math.log10(rho.numerator)


def predict_terms_for_digits(series: SeriesId | str, D: int) -> int:
    """Smallest N with nth_term_exact_leading(N + 1) < 10^-D."""
    if D < 1:
        raise DomainError(f"digits must be >= 1, got {D}")
    spec = _geometric_spec(series)
    target = -D * _LN10
    N = max(spec.start_index, int(D / digits_per_term(spec.id)) - 10)
    while N > spec.start_index and _ln_exact_leading(spec, N + 1) < target:
        N = max(spec.start_index, N - 10)
    while _ln_exact_leading(spec, N + 1) >= target:
        N += 1
    return N
