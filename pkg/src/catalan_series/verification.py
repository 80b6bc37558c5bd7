"""The oracle suite behind ``catalan-series verify``."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from . import oracles
from .engine import reference_G
from .precision import PrecisionContext

EULER_GRID = (
    ((Fraction(1, 2), Fraction(1, 2), Fraction(3, 2)), (-0.4, 0.1, 0.3, 0.45)),
    ((1, 1, Fraction(3, 2)), (-0.4, 0.1, 0.3, 0.4)),
    ((Fraction(1, 2), 1, Fraction(3, 2)), (-0.3, 0.2, 0.45)),
    ((Fraction(1, 3), Fraction(2, 3), Fraction(5, 4)), (-0.25, 0.35)),
)
ARCSIN_POINTS = (0.1, 0.3, 0.5, 0.7)


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    threshold: float
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _check(name: str, residual, threshold: float, detail: str = "", extra_ok: bool = True) -> CheckResult:
    r = float(residual)
    return CheckResult(name, r, threshold, bool(extra_ok and r < threshold), detail)


def _g(digits: int = 40) -> mpmath.mpf:
    return reference_G(digits)


def check_integral(digits: int) -> CheckResult:
    ctx = PrecisionContext(digits)
    value = oracles.integral_theta_over_sin(ctx)
    with mpmath.workdps(digits + 20):
        res = abs(value - 2 * _g(digits + 10))
    return _check(f"integral theta/sin theta = 2G ({digits} digits)", res, 10.0 ** -(digits - 2))


def check_arcsin_integral(digits: int) -> CheckResult:
    ctx = PrecisionContext(digits)
    value = oracles.integral_arcsin_form(ctx)
    with mpmath.workdps(digits + 20):
        res = abs(value - 2 * _g(digits + 10))
    return _check(f"integral of 2F1(1,1;3/2;x^2) over [0,1] = 2G ({digits} digits)", res,
                  10.0 ** -(digits - 2))


def check_arcsin_identities(digits: int = 30) -> list[CheckResult]:
    ctx = PrecisionContext(digits)
    out = []
    for x in ARCSIN_POINTS:
        for key, res in oracles.arcsin_identities(x, ctx).items():
            out.append(_check(f"arcsin form {key} at x={x}", res, 10.0 ** -(digits - 5)))
    return out


def check_euler_grid(digits: int = 30) -> list[CheckResult]:
    ctx = PrecisionContext(digits)
    out = []
    for (a, b, c), zs in EULER_GRID:
        for z in zs:
            res = oracles.euler_transform_check(a, b, c, z, ctx)
            out.append(_check(f"Euler transform ({a},{b};{c}) at z={z}", res, 10.0 ** -(digits - 5)))
    return out


def check_lemma1_coarse(n_terms: int, tolerance: float = 2e-3) -> CheckResult:
    value, tail = oracles.hyp3f2_unit_coarse(oracles.LEMMA1_PARAMS, n_terms)
    two_g = 2 * float(_g(20))
    return _check(
        f"3F2(1/2,1,1;3/2,3/2;1) partial sum vs 2G, N={n_terms}",
        abs(value - two_g),
        tolerance,
        detail=f"value={value!r} below 2G: {value < two_g}; tail estimate {tail:.3e}",
        extra_ok=value < two_g,
    )


def check_guillera_series() -> CheckResult:
    res = abs(oracles.guillera_f_series(0.5, 60) - 4 * float(_g(20)))
    return _check("f(1/2) from the 8^-n form = 4G", res, 1e-12)


def check_guillera_two_sided(x: float, n_terms: int) -> CheckResult:
    f_series = oracles.guillera_f_series(x, 60)
    partial, tail = oracles.guillera_f_hyp(x, n_terms)
    gap = f_series - partial
    # The positive-term partial sum falls short by about the fitted tail.
    res = abs(gap - tail)
    return _check(
        f"Guillera identity at x={x}, N={n_terms}",
        res,
        tail,
        detail=f"f_series={f_series!r} partial={partial!r} tail={tail:.3e}",
        extra_ok=gap > 0,
    )


def check_clausen_beta(n_terms: int) -> CheckResult:
    res = oracles.clausen_beta_check(n_terms)
    return _check(f"beta(2) partial sum, N={n_terms}", res, 1 / (2 * n_terms + 3) ** 2)


def check_dilog_clausen(n_terms: int) -> CheckResult:
    li = oracles.dilog_unit_circle(math.pi / 2, n_terms)
    res = abs(li.imag - float(_g(20)))
    return _check(f"Cl2(pi/2) = Im Li2(i) = G, N={n_terms}", res, 1 / n_terms + 1e-14)


def check_antiderivative(n_terms: int) -> list[CheckResult]:
    return [
        _check(f"dilogarithm antiderivative on [{a:.4f}, {b:.4f}], N={n_terms}",
               oracles.antiderivative_check(a, b, n_terms), 1e-4)
        for a, b in ((math.pi / 6, math.pi / 3), (math.pi / 4, math.pi / 2))
    ]


def run_verification(level: str = "fast") -> list[CheckResult]:
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    full = level == "full"
    steps: list[Callable[[], CheckResult | list[CheckResult]]] = [
        lambda: check_integral(30 if full else 15),
        lambda: check_arcsin_integral(30 if full else 15),
        lambda: check_arcsin_identities(30),
        lambda: check_euler_grid(30),
        lambda: check_lemma1_coarse(10**6 if full else 10**5, 2e-3 if full else 5e-3),
        check_guillera_series,
        *[
            (lambda x=x: check_guillera_two_sided(x, 10**6 if full else 10**5))
            for x in ((0.25, 0.5, 0.75) if full else (0.5,))
        ],
        lambda: check_clausen_beta(10**5 if full else 10**4),
        lambda: check_dilog_clausen(10**5 if full else 10**4),
        lambda: check_antiderivative(10**5 if full else 10**4),
    ]
    results: list[CheckResult] = []
    for step in steps:
        r = step()
        results.extend(r if isinstance(r, list) else [r])
    return results
