"""Independent numerical checks of the identities that lead to the fast series.

The checks come in two strengths.  High-precision ones run in mpmath at a
``PrecisionContext``: the arcsin forms of 2F1, the Euler transformation,
and the integrals of theta/sin(theta) and arcsin(x)/(x sqrt(1 - x^2)), both
of which should equal 2G.  Coarse ones run in double precision: the 3F2
values at unit argument (terms decay only algebraically), the dilogarithm
on the unit circle, and the two representations of Guillera's f(x).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import mpmath
import numpy as np

from .engine import reference_G, sum_incremental
from .errors import DomainError, NotConvergedError
from .kernels import SeriesId
from .precision import PrecisionContext
from .quadrature import QuadratureSpec, integrate


def _to_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _to_mpf(v) -> mpmath.mpf:
    if isinstance(v, mpmath.mpf):
        return v
    if isinstance(v, Rational):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


@dataclass(frozen=True)
class HypParams:
    """Upper and lower rational parameters and the argument of a pFq."""

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    z: object = 1
    _excess: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        upper = tuple(_to_fraction(a) for a in self.upper)
        lower = tuple(_to_fraction(b) for b in self.lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        for b in lower:
            if b <= 0 and b.denominator == 1:
                raise DomainError(f"lower parameter {b} is a nonpositive integer")
        object.__setattr__(self, "_excess", sum(lower, Fraction(0)) - sum(upper, Fraction(0)))
        if self.z == 1 and len(upper) == len(lower) + 1 and self._excess <= 0:
            raise DomainError(f"unit-argument series diverges: excess {self._excess} <= 0")

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def excess(self) -> Fraction:
        """Sum of lower minus sum of upper parameters."""
        return self._excess


LEMMA1_PARAMS = HypParams((Fraction(1, 2), 1, 1), (Fraction(3, 2), Fraction(3, 2)), 1)


def pochhammer(a, n: int, ctx: PrecisionContext | None = None):
    """Rising factorial (a)_n.  Exact for rational ``a`` when ``ctx`` is None."""
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    if ctx is None and isinstance(a, (int, Rational)):
        out = Fraction(1)
        for k in range(n):
            out *= a + k
        return out
    ctx = ctx or PrecisionContext(15)
    with ctx.workprec():
        x = _to_mpf(a)
        out = mpmath.mpf(1)
        for k in range(n):
            out *= x + k
        return out


# ---------------------------------------------------------------- 2F1

_MAX_ABS_Z = mpmath.mpf("0.99")


def hyp2f1(params: HypParams, ctx: PrecisionContext) -> mpmath.mpf:
    """Direct summation of 2F1(a, b; c; z) for |z| <= 0.99.

    Stops once the geometric majorant of the remaining terms falls below
    10^-(working digits).  The majorant uses r = |z| * max(1, current
    parameter factor); the factor tends to 1 monotonically for large n.
    """
    if params.p != 2 or params.q != 1:
        raise DomainError("hyp2f1 needs exactly two upper and one lower parameter")
    with ctx.workprec():
        z = _to_mpf(params.z)
        if abs(z) > _MAX_ABS_Z:
            raise DomainError(f"|z| = {mpmath.nstr(abs(z), 5)} outside the direct-summation domain")
        a, b = (_to_mpf(x) for x in params.upper)
        c = _to_mpf(params.lower[0])
        tol = mpmath.mpf(10) ** -ctx.working_digits
        term = mpmath.mpf(1)
        total = term
        n = 0
        while True:
            factor = (a + n) * (b + n) / ((c + n) * (n + 1))
            term *= factor * z
            total += term
            n += 1
            r = abs(z) * max(1, abs((a + n) * (b + n) / ((c + n) * (n + 1))))
            if r < 1 and abs(term) * r / (1 - r) < tol * max(1, abs(total)):
                return total
            if n > 100 * ctx.working_digits + 10_000:
                raise NotConvergedError("hyp2f1 summation did not converge")


def arcsin_identities(x, ctx: PrecisionContext) -> dict[str, mpmath.mpf]:
    """Residuals of the arcsin closed forms of 2F1 at argument x^2.

    ``over_x``:          2F1(1/2, 1/2; 3/2; x^2) against arcsin(x)/x
    ``over_x_sqrt``:     2F1(1, 1; 3/2; x^2) against arcsin(x)/(x sqrt(1 - x^2))
    ``euler_intermediate``: (1 - x^2)^(-1/2) 2F1(1/2, 1; 3/2; -x^2/(1 - x^2))
                         against arcsin(x)/x
    """
    with ctx.workprec():
        x = _to_mpf(x)
        if not 0 < abs(x) < 1:
            raise DomainError("need 0 < |x| < 1")
        x2 = x * x
        s = mpmath.sqrt(1 - x2)
        asx = mpmath.asin(x) / x
        h = Fraction(1, 2)
        f_half = hyp2f1(HypParams((h, h), (Fraction(3, 2),), x2), ctx)
        f_one = hyp2f1(HypParams((1, 1), (Fraction(3, 2),), x2), ctx)
        out = {
            "over_x": abs(f_half - asx),
            "over_x_sqrt": abs(f_one - asx / s),
        }
        w = -x2 / (1 - x2)
        if abs(w) <= _MAX_ABS_Z:
            f_mid = hyp2f1(HypParams((h, 1), (Fraction(3, 2),), w), ctx)
            out["euler_intermediate"] = abs(f_mid / s - asx)
        return out


def euler_transform_check(a, b, c, z, ctx: PrecisionContext) -> mpmath.mpf:
    """|2F1(a, b; c; z) - (1 - z)^(-a) 2F1(a, c - b; c; z/(z - 1))|."""
    a, b, c = (_to_fraction(v) for v in (a, b, c))
    with ctx.workprec():
        z = _to_mpf(z)
        if z == 0:
            zt = mpmath.mpf(0)
        else:
            zt = z / (z - 1)
        if abs(z) > _MAX_ABS_Z or abs(zt) > _MAX_ABS_Z:
            raise DomainError("both z and z/(z-1) must lie in the direct-summation domain")
        lhs = hyp2f1(HypParams((a, b), (c,), z), ctx)
        rhs = (1 - z) ** (-_to_mpf(a)) * hyp2f1(HypParams((a, c - b), (c,), zt), ctx)
        return abs(lhs - rhs)


# ---------------------------------------------------------------- 3F2 at z = 1

def _unit_terms(upper, lower, n_terms: int) -> np.ndarray:
    n = np.arange(n_terms - 1, dtype=np.float64)
    ratio = np.ones_like(n)
    for a in upper:
        ratio *= float(a) + n
    for b in lower:
        ratio /= float(b) + n
    ratio /= n + 1
    return np.concatenate(([1.0], np.cumprod(ratio)))


def _coarse_unit_sum(params: HypParams, n_terms: int) -> tuple[float, float]:
    terms = _unit_terms(params.upper, params.lower, n_terms)
    value = math.fsum(terms)
    s = float(params.excess)
    last = n_terms - 1
    if last == 0:
        return value, math.inf
    # terms ~ C n^-(1+s); C fitted at the last index, tail ~ integral from N.
    c = terms[-1] * last ** (1 + s)
    return value, c * n_terms ** (-s) / s


def hyp3f2_unit_coarse(params: HypParams, n_terms: int) -> tuple[float, float]:
    """Partial sum of a 3F2 at z = 1 over n < n_terms, plus a fitted tail estimate."""
    if params.p != 3 or params.q != 2 or params.z != 1:
        raise DomainError("hyp3f2_unit_coarse needs a 3F2 at z = 1")
    if params.excess <= 0:
        raise DomainError(f"nonpositive excess {params.excess}")
    if n_terms < 1000:
        raise DomainError("use at least 1000 terms")
    return _coarse_unit_sum(params, n_terms)


# ---------------------------------------------------------------- integrals

def _theta_over_sin(t):
    return mpmath.mpf(1) if t == 0 else t / mpmath.sin(t)


def integral_theta_over_sin(ctx: PrecisionContext, quad: QuadratureSpec | None = None) -> mpmath.mpf:
    """Integral of theta/sin(theta), over [0, pi/2] unless ``quad.interval`` says otherwise.

    The level is refined until two levels agree to 10^-(D + 2);
    :class:`NotConvergedError` otherwise.
    """
    quad = quad or QuadratureSpec()
    with ctx.with_extra_guard(5).workprec():
        if quad.interval is None:
            lo, hi = mpmath.mpf(0), mpmath.pi / 2
        else:
            lo, hi = (_to_mpf(v) for v in quad.interval)
        value, _ = integrate(_theta_over_sin, lo, hi, ctx.target_digits + 2, quad)
    return value


def _arcsin_form(u):
    # Integrand arcsin(x)/(x sqrt(1-x^2)) written in u = 1 - x so nodes near
    # the singular end x = 1 are exact.
    x = 1 - u
    root = mpmath.sqrt(u * (2 - u))
    if x == 0:
        return 1 / root
    return mpmath.asin(x) / (x * root)


def integral_arcsin_form(ctx: PrecisionContext, quad: QuadratureSpec | None = None) -> mpmath.mpf:
    """Integral over [0, 1] of 2F1(1, 1; 3/2; x^2) in closed form; equals 2G."""
    with ctx.with_extra_guard(5).workprec():
        value, _ = integrate(_arcsin_form, mpmath.mpf(0), mpmath.mpf(1), ctx.target_digits + 2, quad)
    return value


# ---------------------------------------------------------------- dilogarithm

def dilog_unit_circle(theta: float, n_terms: int) -> complex:
    """Partial sum of Li2(e^{i theta}) = sum e^{i n theta}/n^2 for n <= n_terms.

    The truncation error is at most 1/n_terms.
    """
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    phase = n * theta
    inv = 1.0 / (n * n)
    re = math.fsum(np.cos(phase) * inv)
    im = math.fsum(np.sin(phase) * inv)
    return complex(re, im)


def theta_over_sin_antiderivative(theta: float, n_terms: int) -> complex:
    """theta log((1 - e^{i theta})/(1 + e^{i theta})) + i (Li2(-e^{i theta}) - Li2(e^{i theta}))."""
    e = cmath.exp(1j * theta)
    log_part = theta * cmath.log((1 - e) / (1 + e))
    li_minus = dilog_unit_circle(theta + math.pi, n_terms)
    li_plus = dilog_unit_circle(theta, n_terms)
    return log_part + 1j * (li_minus - li_plus)


def antiderivative_check(a: float, b: float, n_terms: int) -> float:
    """|F(b) - F(a) - integral_a^b theta/sin(theta)| with F the dilogarithm antiderivative."""
    if a == b:
        return 0.0
    if not 0 < a < b <= math.pi / 2:
        raise DomainError("need 0 < a < b <= pi/2")
    ctx = PrecisionContext(20)
    quad = QuadratureSpec(interval=(a, b))
    exact = complex(integral_theta_over_sin(ctx, quad))
    delta = theta_over_sin_antiderivative(b, n_terms) - theta_over_sin_antiderivative(a, n_terms)
    return abs(delta - exact)


# ---------------------------------------------------------------- beta(2)

def beta2_deviation(n_terms: int) -> mpmath.mpf:
    """Signed S_N - G for sum_{n<=N} (-1)^n/(2n+1)^2, with N = n_terms."""
    s = sum_incremental(SeriesId.BETA2_NAIVE, n_terms, PrecisionContext(20)).value
    with mpmath.workdps(30):
        return s - reference_G(25)


def clausen_beta_check(n_terms: int) -> float:
    """|sum_{n=0..N} (-1)^n/(2n+1)^2 - G|; the alternating bound is 1/(2N+3)^2."""
    if n_terms < 100:
        raise DomainError("use at least 100 terms")
    s = sum_incremental(SeriesId.BETA2_NAIVE, n_terms, PrecisionContext(20)).value
    with mpmath.workdps(30):
        return float(abs(s - reference_G(15)))


# ---------------------------------------------------------------- Guillera's f(x)

def guillera_f_term(x: Fraction, n: int) -> Fraction:
    """Exact n-th term (-1)^n (x+1/2)_n^3 / (8^n (x+1)_n^3) * (6(x+n) + 1)."""
    x = _to_fraction(x)
    half = Fraction(1, 2)
    ratio = pochhammer(x + half, n) / pochhammer(x + 1, n)
    return (-1) ** n * ratio**3 / 8**n * (6 * (x + n) + 1)


def _check_unit_interval(x) -> None:
    if not 0 < x < 1:
        raise DomainError(f"x must lie in (0, 1), got {x}")


def guillera_f_series(x: float, n_terms: int) -> float:
    """Alternating 8^-n representation of f(x), summed over n < n_terms."""
    _check_unit_interval(x)
    x = float(x)
    term = 1.0
    parts = []
    for n in range(n_terms):
        parts.append(term * (6 * (x + n) + 1))
        term *= -(((x + 0.5 + n) / (x + 1 + n)) ** 3) / 8
    return math.fsum(parts)


def guillera_f_hyp(x: float, n_terms: int) -> tuple[float, float]:
    """4x * 3F2((2x+1)/4, (2x+3)/4, 1; x+1, x+1; 1) over n < n_terms.

    Returns ``(partial_sum, tail_estimate)``; the terms are positive and
    decay like n^-(1+x), so the tail is sizable for small x.
    """
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    if n_terms < 1:
        raise DomainError("need at least one term")
    xf = _to_fraction(x) if isinstance(x, (int, Rational)) else Fraction(x).limit_denominator(10**12)
    params = HypParams(
        (xf / 2 + Fraction(1, 4), xf / 2 + Fraction(3, 4), 1),
        (xf + 1, xf + 1),
        1,
    )
    value, tail = _coarse_unit_sum(params, n_terms)
    scale = 4 * float(x)
    return scale * value, scale * tail
