import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from catalan_series import DomainError, PrecisionContext, reference_G, term_exact
from catalan_series import oracles
from catalan_series.oracles import HypParams, LEMMA1_PARAMS
from catalan_series.quadrature import QuadratureSpec, Rule

G = float(reference_G(20))


def close(a, b, digits):
    with mpmath.workdps(digits + 20):
        return abs(a - b) < mpmath.mpf(10) ** -digits


# ---------------------------------------------------------------- pochhammer / params

def test_pochhammer():
    assert oracles.pochhammer(Fraction(7, 3), 0) == 1
    assert oracles.pochhammer(1, 6) == math.factorial(6)
    assert oracles.pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    v = oracles.pochhammer(Fraction(1, 2), 3, PrecisionContext(20))
    assert close(v, mpmath.mpf(15) / 8, 20)


def test_hyp_params_validation():
    with pytest.raises(DomainError):
        HypParams((1, 1), (0,), Fraction(1, 2))
    with pytest.raises(DomainError):
        HypParams((1, 1, 1), (1, 2), 1)  # excess 0 at z = 1
    assert LEMMA1_PARAMS.excess == Fraction(1, 2)


# ---------------------------------------------------------------- 2F1

def test_hyp2f1_arcsin_over_x():
    ctx = PrecisionContext(40)
    h = Fraction(1, 2)
    v = oracles.hyp2f1(HypParams((h, h), (Fraction(3, 2),), Fraction(1, 4)), ctx)
    with mpmath.workdps(60):
        assert close(v, mpmath.pi / 3, 40)


def test_hyp2f1_arcsin_over_x_sqrt():
    ctx = PrecisionContext(40)
    v = oracles.hyp2f1(HypParams((1, 1), (Fraction(3, 2),), Fraction(1, 4)), ctx)
    with mpmath.workdps(60):
        assert close(v, 2 * mpmath.pi / (3 * mpmath.sqrt(3)), 40)


def test_hyp2f1_zero_argument():
    v = oracles.hyp2f1(HypParams((Fraction(2, 3), 5), (Fraction(7, 2),), 0), PrecisionContext(20))
    assert v == 1


def test_hyp2f1_rejects_large_argument():
    with pytest.raises(DomainError):
        oracles.hyp2f1(HypParams((1, 1), (Fraction(3, 2),), Fraction(999, 1000)), PrecisionContext(20))


@pytest.mark.parametrize("x", [0.1, 0.3, 0.5, 0.7])
def test_arcsin_identities(x):
    residuals = oracles.arcsin_identities(x, PrecisionContext(30))
    assert set(residuals) >= {"over_x", "over_x_sqrt"}
    for r in residuals.values():
        assert r < mpmath.mpf(10) ** -25


@pytest.mark.parametrize(
    "a, b, c, z",
    [(Fraction(1, 2), Fraction(1, 2), Fraction(3, 2), 0.3), (1, 1, Fraction(3, 2), 0.4)],
)
def test_euler_transform(a, b, c, z):
    assert oracles.euler_transform_check(a, b, c, z, PrecisionContext(30)) < mpmath.mpf(10) ** -28


def test_euler_transform_at_zero():
    assert oracles.euler_transform_check(Fraction(1, 3), 2, Fraction(5, 2), 0, PrecisionContext(20)) == 0


def test_euler_transform_domain():
    with pytest.raises(DomainError):
        oracles.euler_transform_check(1, 1, Fraction(3, 2), 0.6, PrecisionContext(20))


@settings(max_examples=15, deadline=None)
@given(
    st.fractions(min_value=Fraction(1, 8), max_value=3, max_denominator=8),
    st.fractions(min_value=Fraction(1, 8), max_value=3, max_denominator=8),
    st.fractions(min_value=Fraction(1, 2), max_value=4, max_denominator=8),
    st.floats(min_value=-0.45, max_value=0.45),
)
def test_euler_transform_property(a, b, c, z):
    assert oracles.euler_transform_check(a, b, c, z, PrecisionContext(25)) < mpmath.mpf(10) ** -20


# ---------------------------------------------------------------- 3F2 at unit argument

def test_lemma1_coarse_million_terms():
    value, tail = oracles.hyp3f2_unit_coarse(LEMMA1_PARAMS, 10**6)
    assert abs(value - 2 * G) < 2e-3
    assert value < 2 * G
    assert tail > 0


def test_lemma1_coarse_monotone():
    values = [oracles.hyp3f2_unit_coarse(LEMMA1_PARAMS, n)[0] for n in (10**3, 10**4, 10**5)]
    assert values[0] < values[1] < values[2] < 2 * G


def test_coarse_generic_params():
    value, tail = oracles.hyp3f2_unit_coarse(HypParams((1, 1, 1), (3, 3), 1), 10**4)
    assert math.isfinite(value) and tail > 0


def test_coarse_rejects():
    with pytest.raises(DomainError):
        oracles.hyp3f2_unit_coarse(LEMMA1_PARAMS, 10)
    with pytest.raises(DomainError):
        oracles.hyp3f2_unit_coarse(HypParams((1, 1), (Fraction(3, 2),), 1), 10**4)


# ---------------------------------------------------------------- integrals

def test_integral_theta_over_sin_30_digits():
    v = oracles.integral_theta_over_sin(PrecisionContext(30))
    with mpmath.workdps(60):
        assert abs(v - 2 * reference_G(40)) < mpmath.mpf(10) ** -28


def test_integral_theta_over_sin_10_digits():
    v = oracles.integral_theta_over_sin(PrecisionContext(10))
    assert mpmath.nstr(v, 11) == "1.8319311884"
    assert str(mpmath.floor(v * 10**10)) == "18319311883.0"


def test_integral_gauss_legendre_knob():
    v = oracles.integral_theta_over_sin(PrecisionContext(20), QuadratureSpec(rule=Rule.GAUSS_LEGENDRE))
    with mpmath.workdps(40):
        assert abs(v - 2 * reference_G(30)) < mpmath.mpf(10) ** -18


def test_integral_degenerate_interval():
    with mpmath.workdps(30):
        quarter = mpmath.pi / 4
    assert oracles.integral_theta_over_sin(PrecisionContext(10), QuadratureSpec(interval=(quarter, quarter))) == 0


def test_integral_arcsin_form():
    v = oracles.integral_arcsin_form(PrecisionContext(30))
    with mpmath.workdps(60):
        assert abs(v - 2 * reference_G(40)) < mpmath.mpf(10) ** -28


# ---------------------------------------------------------------- dilogarithm

def test_dilog_at_minus_one():
    assert oracles.dilog_unit_circle(math.pi, 10**5).real == pytest.approx(-math.pi**2 / 12, abs=1e-5)


def test_dilog_clausen_value():
    n = 10**4
    assert abs(oracles.dilog_unit_circle(math.pi / 2, n).imag - G) < 1 / n + 1e-14


def test_dilog_cauchy():
    n = 2000
    a = oracles.dilog_unit_circle(2 * math.pi / 3, n)
    b = oracles.dilog_unit_circle(2 * math.pi / 3, 2 * n)
    assert abs(a - b) < 1 / n


@pytest.mark.parametrize("a, b", [(math.pi / 6, math.pi / 3), (math.pi / 4, math.pi / 2)])
def test_antiderivative(a, b):
    assert oracles.antiderivative_check(a, b, 10**5) < 1e-4


def test_antiderivative_degenerate_and_domain():
    assert oracles.antiderivative_check(0.7, 0.7, 1000) == 0
    with pytest.raises(DomainError):
        oracles.antiderivative_check(0.0, 1.0, 1000)


def test_antiderivative_limit_value():
    # F(pi/2) - lim F(0+) = 2G, using Li2(-1) = -pi^2/12 and Li2(1) = pi^2/6.
    f_top = oracles.theta_over_sin_antiderivative(math.pi / 2, 10**5)
    f_bottom = 1j * (-math.pi**2 / 12 - math.pi**2 / 6)
    assert abs(f_top - f_bottom - 2 * G) < 1e-4


# ---------------------------------------------------------------- beta(2)

@pytest.mark.parametrize("n, bound", [(10**4, 2.5e-9), (100, 2.5e-5)])
def test_clausen_beta(n, bound):
    r = oracles.clausen_beta_check(n)
    assert r < bound
    assert r <= 1 / (2 * n + 3) ** 2


def test_beta_deviation_sign_alternates():
    signs = [oracles.beta2_deviation(n) > 0 for n in range(100, 106)]
    assert signs == [n % 2 == 0 for n in range(100, 106)]


# ---------------------------------------------------------------- Guillera

def test_guillera_series_half():
    assert abs(oracles.guillera_f_series(0.5, 60) - 4 * G) < 1e-12


def test_guillera_half_terms_are_theorem1_terms():
    # f(1/2) summands = 2 x (theorem1 inner summand) = 4 x term_exact(theorem1, n)
    for n in range(25):
        assert oracles.guillera_f_term(Fraction(1, 2), n) == 4 * term_exact("theorem1", n)


@pytest.mark.parametrize("x", [0.2, 0.5, 0.9])
def test_guillera_series_geometric_tail(x):
    n = 12
    diff = abs(oracles.guillera_f_series(x, n) - oracles.guillera_f_series(x, n + 10))
    assert diff < 20 * (n + 2) * 8.0**-n


def test_guillera_hyp_half():
    value, tail = oracles.guillera_f_hyp(0.5, 10**6)
    assert abs(value - 4 * G) < 5e-3
    assert value < 4 * G


@pytest.mark.parametrize("x", [0.25, 0.5, 0.75])
def test_guillera_two_sided(x):
    f_series = oracles.guillera_f_series(x, 60)
    partial, tail = oracles.guillera_f_hyp(x, 10**5)
    assert f_series > partial
    assert abs(f_series - (partial + tail)) < tail


@pytest.mark.parametrize("x", [0.1, 0.5, 0.8])
def test_guillera_hyp_first_term(x):
    value, _ = oracles.guillera_f_hyp(x, 1)
    assert value == pytest.approx(4 * x, rel=1e-15)


def test_guillera_domain():
    with pytest.raises(DomainError):
        oracles.guillera_f_series(1.0, 10)
    with pytest.raises(DomainError):
        oracles.guillera_f_hyp(0.0, 10)
