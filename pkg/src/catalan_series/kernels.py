"""Exact rational description of the central-binomial series for G.

Every series is written as ``G = additive_constant + sum_{n >= n0} t(n)``
where ``t(n)`` already carries the scalar prefactor and sign.  The
consecutive-term ratios are stored as integer polynomials so that
incremental summation, binary splitting and tail bounds all read from
the same table.  ``term_exact`` deliberately ignores the ratios and goes
through big-integer binomials; the test-suite checks one against the other.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

from .errors import DomainError
from .precision import PrecisionContext

Poly = tuple[int, ...]  # coefficients, lowest degree first


class SeriesId(str, enum.Enum):
    RAMANUJAN = "ramanujan"
    LUPAS = "lupas"
    SUN = "sun"
    THEOREM1 = "theorem1"
    BETA2_NAIVE = "beta2_naive"

    def __str__(self) -> str:
        return self.value


GEOMETRIC = (SeriesId.LUPAS, SeriesId.RAMANUJAN, SeriesId.SUN, SeriesId.THEOREM1)


class AdditiveConstant(str, enum.Enum):
    NONE = "none"
    PI_OVER_8_LN_2_PLUS_SQRT3 = "pi_over_8_ln_2_plus_sqrt3"


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _expand(*factors: Poly) -> Poly:
    out: Poly = (1,)
    for f in factors:
        out = _poly_mul(out, f)
    return out


def poly_eval(p: Poly, n: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * n + c
    return acc


@dataclass(frozen=True)
class SeriesSpec:
    id: SeriesId
    start_index: int
    scalar: Fraction
    additive_constant: AdditiveConstant
    alternating: bool
    ratio_num: Poly
    ratio_den: Poly
    geometric_limit: Fraction
    conjectured: bool = False

    @property
    def n0(self) -> int:
        return self.start_index

    @property
    def geometric(self) -> bool:
        return self.geometric_limit < 1

    def ratio_at(self, n: int) -> tuple[int, int]:
        """Signed integer numerator and positive denominator of t(n+1)/t(n)."""
        return poly_eval(self.ratio_num, n), poly_eval(self.ratio_den, n)


# n -> (n+1) ratios, worked out by hand from the binomial identities
#   C(2n+2, n+1) / C(2n, n)   = 2(2n+1)/(n+1)
#   C(4n+4, 2n+2) / C(4n, 2n) = 2(4n+1)(4n+3)/((n+1)(2n+1))
SPECS: dict[SeriesId, SeriesSpec] = {
    SeriesId.RAMANUJAN: SeriesSpec(
        id=SeriesId.RAMANUJAN,
        start_index=0,
        scalar=Fraction(3, 8),
        additive_constant=AdditiveConstant.PI_OVER_8_LN_2_PLUS_SQRT3,
        alternating=False,
        ratio_num=_expand((1, 1), (1, 2)),
        ratio_den=_expand((2,), (3, 2), (3, 2)),
        geometric_limit=Fraction(1, 4),
    ),
    SeriesId.LUPAS: SeriesSpec(
        id=SeriesId.LUPAS,
        start_index=1,
        scalar=Fraction(-1, 64),
        additive_constant=AdditiveConstant.NONE,
        alternating=True,
        ratio_num=_expand((-32,), (19, 56, 40), (0, 1), (0, 1), (0, 1), (-1, 2)),
        ratio_den=_expand((3, -24, 40), (1, 4), (1, 4), (3, 4), (3, 4)),
        geometric_limit=Fraction(1, 4),
    ),
    SeriesId.SUN: SeriesSpec(
        id=SeriesId.SUN,
        start_index=1,
        scalar=Fraction(-1, 2),
        additive_constant=AdditiveConstant.NONE,
        alternating=True,
        ratio_num=_expand((-1,), (2, 3), (0, 1), (0, 1), (0, 1)),
        ratio_den=_expand((-1, 3), (1, 2), (1, 2), (1, 2)),
        geometric_limit=Fraction(1, 8),
        conjectured=True,
    ),
    SeriesId.THEOREM1: SeriesSpec(
        id=SeriesId.THEOREM1,
        start_index=0,
        scalar=Fraction(1, 2),
        additive_constant=AdditiveConstant.NONE,
        alternating=True,
        ratio_num=_expand((-1,), (1, 1), (1, 1), (1, 1), (5, 3)),
        ratio_den=_expand((3, 2), (3, 2), (3, 2), (2, 3)),
        geometric_limit=Fraction(1, 8),
    ),
    SeriesId.BETA2_NAIVE: SeriesSpec(
        id=SeriesId.BETA2_NAIVE,
        start_index=0,
        scalar=Fraction(1),
        additive_constant=AdditiveConstant.NONE,
        alternating=True,
        ratio_num=_expand((-1,), (1, 2), (1, 2)),
        ratio_den=_expand((3, 2), (3, 2)),
        geometric_limit=Fraction(1),
    ),
}


def get_spec(series: SeriesId | str) -> SeriesSpec:
    return SPECS[SeriesId(series)]


def _check_index(spec: SeriesSpec, n: int) -> None:
    if n < spec.start_index:
        raise DomainError(f"{spec.id.value}: index {n} below start index {spec.start_index}")


def _raw_term(series: SeriesId, n: int) -> Fraction:
    # Unsigned-prefactor summand straight from the closed forms.
    sign = -1 if n % 2 else 1
    if series is SeriesId.RAMANUJAN:
        return Fraction(1, (2 * n + 1) ** 2 * comb(2 * n, n))
    if series is SeriesId.LUPAS:
        return Fraction(
            sign * 2 ** (8 * n) * (40 * n * n - 24 * n + 3),
            n**3 * (2 * n - 1) * comb(2 * n, n) * comb(4 * n, 2 * n) ** 2,
        )
    if series is SeriesId.SUN:
        return Fraction(sign * (3 * n - 1) * 8**n, n**3 * comb(2 * n, n) ** 3)
    if series is SeriesId.THEOREM1:
        return Fraction(sign * (3 * n + 2) * 8**n, (2 * n + 1) ** 3 * comb(2 * n, n) ** 3)
    return Fraction(sign, (2 * n + 1) ** 2)


def term_exact(series: SeriesId | str, n: int) -> Fraction:
    """Signed n-th summand (prefactor included, additive constant excluded).

    Evaluated from factorials/binomials directly; cost grows with ``n``.

    >>> term_exact("theorem1", 1)
    Fraction(-5, 54)
    """
    spec = get_spec(series)
    _check_index(spec, n)
    return spec.scalar * _raw_term(spec.id, n)


def term_ratio(series: SeriesId | str, n: int) -> Fraction:
    """Exact t(n+1)/t(n) from the stored ratio polynomials."""
    spec = get_spec(series)
    _check_index(spec, n)
    num, den = spec.ratio_at(n)
    return Fraction(num, den)


def additive_constant(series: SeriesId | str, ctx: PrecisionContext) -> mpmath.mpf:
    """(pi/8) ln(2 + sqrt 3) for Ramanujan's series, zero otherwise."""
    spec = get_spec(series)
    with ctx.workprec():
        if spec.additive_constant is AdditiveConstant.NONE:
            return mpmath.mpf(0)
        return mpmath.pi / 8 * mpmath.log(2 + mpmath.sqrt(3))
