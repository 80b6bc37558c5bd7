"""Arbitrary-precision summation of the series described in :mod:`kernels`.

Two summation routes are provided:

* ``sum_incremental`` seeds the first term exactly and walks the ratio
  recurrence in mpmath floating point;
* ``sum_binary_splitting`` accumulates big-integer (P, Q, T) triples over
  the index range and performs a single division at the end.

Stopping decisions use :func:`tail_bound`, an exact rational majorant of the
truncation error, never the asymptotic estimates.
"""

from __future__ import annotations

import math
import threading
import time
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import mpmath

from .errors import CrossCheckError, DomainError, UnsupportedSeriesError
from .kernels import (
    SeriesId,
    SeriesSpec,
    additive_constant,
    get_spec,
    term_exact,
)
from .precision import PrecisionContext

DEFAULT_GUARD = 20


@dataclass(frozen=True)
class PartialSumResult:
    id: SeriesId
    last_index: int
    value: mpmath.mpf
    tail_bound: Fraction
    terms_used: int
    elapsed: float  # seconds
    method: str = "incremental"


@dataclass(frozen=True)
class BinSplitNode:
    """Summed index range [a, b).

    ``T / Q`` equals the sum over the range of each term divided by the
    term at ``a``; ``P / Q`` is the product of the ratios across the range.
    """

    a: int
    b: int
    P: int
    Q: int
    T: int

    @classmethod
    def leaf(cls, spec: SeriesSpec, n: int) -> BinSplitNode:
        num, den = spec.ratio_at(n)
        q = gmpy2.mpz(den)
        return cls(n, n + 1, gmpy2.mpz(num), q, q)

    def merge(self, right: BinSplitNode) -> BinSplitNode:
        if self.b != right.a:
            raise ValueError(f"ranges [{self.a},{self.b}) and [{right.a},{right.b}) are not adjacent")
        return BinSplitNode(
            self.a,
            right.b,
            self.P * right.P,
            self.Q * right.Q,
            self.T * right.Q + self.P * right.T,
        )


def _geometric_spec(series: SeriesId | str) -> SeriesSpec:
    spec = get_spec(series)
    if not spec.geometric:
        raise UnsupportedSeriesError(f"{spec.id.value} is not a geometrically convergent kernel")
    return spec


def _check_last_index(spec: SeriesSpec, N: int) -> None:
    if N < spec.start_index:
        raise DomainError(f"{spec.id.value}: N={N} below start index {spec.start_index}")


def _tail(spec: SeriesSpec, N: int) -> Fraction:
    nxt = abs(term_exact(spec.id, N + 1))
    if spec.alternating:
        return nxt
    # All-positive terms with ratios increasing to the limit from below.
    return nxt / (1 - spec.geometric_limit)


def tail_bound(series: SeriesId | str, N: int) -> Fraction:
    """Exact upper bound on |S_inf - S_N| for a geometric kernel.

    Alternating kernels: the first omitted term.  Ramanujan: the first
    omitted term times 1/(1 - 1/4), since its ratios stay below 1/4.
    """
    spec = _geometric_spec(series)
    _check_last_index(spec, N)
    return _tail(spec, N)


def sum_incremental(series: SeriesId | str, N: int, ctx: PrecisionContext) -> PartialSumResult:
    spec = get_spec(series)
    _check_last_index(spec, N)
    start = time.perf_counter()
    wctx = ctx.with_extra_guard(math.ceil(math.log10(N + 1)))
    t0 = term_exact(spec.id, spec.start_index)
    with wctx.workprec():
        term = mpmath.mpf(t0.numerator) / t0.denominator
        total = term
        for n in range(spec.start_index, N):
            num, den = spec.ratio_at(n)
            term = term * num / den
            total += term
        value = total + additive_constant(spec.id, wctx)
    return PartialSumResult(
        id=spec.id,
        last_index=N,
        value=value,
        tail_bound=_tail(spec, N),
        terms_used=N - spec.start_index + 1,
        elapsed=time.perf_counter() - start,
        method="incremental",
    )


def split_range(spec: SeriesSpec, a: int, b: int) -> BinSplitNode:
    """(P, Q, T) node for the index range [a, b), built by recursive halving."""
    if b - a == 1:
        return BinSplitNode.leaf(spec, a)
    m = (a + b) // 2
    return split_range(spec, a, m).merge(split_range(spec, m, b))


def sum_binary_splitting(series: SeriesId | str, N: int, ctx: PrecisionContext) -> PartialSumResult:
    spec = _geometric_spec(series)
    _check_last_index(spec, N)
    start = time.perf_counter()
    t0 = term_exact(spec.id, spec.start_index)
    node = split_range(spec, spec.start_index, N + 1)
    with ctx.workprec():
        value = mpmath.mpf(t0.numerator * node.T) / mpmath.mpf(t0.denominator * node.Q)
        value += additive_constant(spec.id, ctx)
    return PartialSumResult(
        id=spec.id,
        last_index=N,
        value=value,
        tail_bound=_tail(spec, N),
        terms_used=N - spec.start_index + 1,
        elapsed=time.perf_counter() - start,
        method="binsplit",
    )


def _log10_abs_term(spec: SeriesSpec, n: int) -> float:
    # Float estimate of log10|t(n)| via lgamma; used only to seed the exact scan.
    lg = math.lgamma
    ln_c2 = lg(2 * n + 1) - 2 * lg(n + 1)
    s = spec.id
    if s is SeriesId.RAMANUJAN:
        v = -2 * math.log(2 * n + 1) - ln_c2
    elif s is SeriesId.LUPAS:
        ln_c4 = lg(4 * n + 1) - 2 * lg(2 * n + 1)
        v = (8 * n * math.log(2) + math.log(40 * n * n - 24 * n + 3)
             - 3 * math.log(n) - math.log(2 * n - 1) - ln_c2 - 2 * ln_c4)
    elif s is SeriesId.SUN:
        v = math.log(3 * n - 1) + n * math.log(8) - 3 * math.log(n) - 3 * ln_c2
    elif s is SeriesId.THEOREM1:
        v = math.log(3 * n + 2) + n * math.log(8) - 3 * math.log(2 * n + 1) - 3 * ln_c2
    else:
        v = -2 * math.log(2 * n + 1)
    return (v + math.log(abs(spec.scalar))) / math.log(10)


def terms_needed(series: SeriesId | str, threshold: Fraction) -> int:
    """Smallest N >= n0 with tail_bound(series, N) < threshold (exact comparison)."""
    spec = _geometric_spec(series)
    target = math.log10(threshold.numerator) - math.log10(threshold.denominator)
    rate = -math.log10(spec.geometric_limit)
    n = spec.start_index
    # Coarse jump using the geometric rate, then refine on the float estimate.
    guess = max(n, int((-target) / rate) - 5)
    while guess > n and _log10_abs_term(spec, guess + 1) < target:
        guess = max(n, guess - 10)
    while _log10_abs_term(spec, guess + 1) >= target:
        guess += 1
    N = guess
    while _tail(spec, N) >= threshold:
        N += 1
    while N > spec.start_index and _tail(spec, N - 1) < threshold:
        N -= 1
    return N


def sum_to_digits(
    series: SeriesId | str,
    D: int,
    *,
    guard_digits: int = DEFAULT_GUARD,
    method: str = "binsplit",
) -> tuple[mpmath.mpf, int]:
    """S_N within 10^-D of the series limit, with N fixed by the exact tail bound.

    Returns ``(value, N_used)``; ``value`` carries ``D + guard_digits`` digits.
    """
    if D < 1:
        raise DomainError(f"digits must be >= 1, got {D}")
    spec = _geometric_spec(series)
    ctx = PrecisionContext(D, guard_digits)
    N = terms_needed(spec.id, Fraction(1, 10 ** (D + guard_digits // 2)))
    if method == "binsplit":
        res = sum_binary_splitting(spec.id, N, ctx)
    elif method == "incremental":
        res = sum_incremental(spec.id, N, ctx)
    else:
        raise ValueError(f"unknown method {method!r}")
    return res.value, N


def format_truncated(x: mpmath.mpf, D: int) -> str:
    """Nonnegative ``x`` truncated (not rounded) to exactly ``D`` decimals.

    Every printed digit is then a true leading digit of ``x``.
    """
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    if x < 0:
        raise ValueError("format_truncated expects a nonnegative value")
    # Enough bits for x * 10^D to be formed exactly before flooring.
    bits = x._mpf_[3] + math.ceil(D * math.log2(10)) + 16
    with mpmath.workprec(bits):
        k = gmpy2.mpz(int(mpmath.floor(x * mpmath.mpf(10) ** D)))
    # gmpy2 formatting is not subject to CPython's int->str digit limit.
    text = k.digits(10).rjust(D + 1, "0")
    return f"{text[:-D]}.{text[-D:]}"


_reference_cache: dict[int, str] = {}
# mpmath's working precision is process-global, so computations are
# serialized behind one writer lock; cached reads skip the heavy path.
_reference_lock = threading.RLock()


def reference_digits(D: int) -> str:
    """First D decimals of G as a string, cross-checked between two series."""
    if D < 1:
        raise DomainError(f"digits must be >= 1, got {D}")
    cached = _reference_cache.get(D)
    if cached is not None:
        return cached
    with _reference_lock:
        cached = _reference_cache.get(D)
        if cached is not None:
            return cached
        primary, _ = sum_to_digits(SeriesId.THEOREM1, D + 10)
        check, _ = sum_to_digits(SeriesId.RAMANUJAN, D + 10)
        with mpmath.workdps(D + 30):
            diff = abs(primary - check)
            if diff >= mpmath.mpf(10) ** -(D + 5):
                raise CrossCheckError(
                    f"theorem1 and ramanujan disagree at D={D}: |diff| = {mpmath.nstr(diff, 5)}"
                )
        digits = format_truncated(primary, D)
        _reference_cache[D] = digits
        return digits


def reference_G(D: int) -> mpmath.mpf:
    """Catalan's constant truncated to D decimal places (cached per D).

    The theorem1 and Ramanujan series are summed independently at D + 10
    digits and must agree to D + 5 digits, else :class:`CrossCheckError`.
    """
    s = reference_digits(D)
    with mpmath.workdps(D + 10):
        return mpmath.mpf(s)
