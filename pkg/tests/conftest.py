import sys
from fractions import Fraction
from math import factorial

import pytest

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def brute_term(series: str, n: int) -> Fraction:
    """Summands from raw factorials, independent of the package's binomial code."""
    f = factorial

    def c2(k):  # (2k)!/(k!)^2
        return Fraction(f(2 * k), f(k) ** 2)

    if series == "ramanujan":
        return Fraction(3, 8) / ((2 * n + 1) ** 2 * c2(n))
    if series == "lupas":
        c4 = Fraction(f(4 * n), f(2 * n) ** 2)
        return Fraction(-1, 64) * (-1) ** n * 2 ** (8 * n) * (40 * n**2 - 24 * n + 3) / (
            n**3 * (2 * n - 1) * c2(n) * c4**2)
    if series == "sun":
        return Fraction(-1, 2) * (-1) ** n * (3 * n - 1) * 8**n / (n**3 * c2(n) ** 3)
    if series == "theorem1":
        return Fraction(1, 2) * (-1) ** n * (3 * n + 2) * 8**n / ((2 * n + 1) ** 3 * c2(n) ** 3)
    if series == "beta2_naive":
        return Fraction((-1) ** n, (2 * n + 1) ** 2)
    raise KeyError(series)


GEOMETRIC_IDS = ["lupas", "ramanujan", "sun", "theorem1"]
START = {"lupas": 1, "ramanujan": 0, "sun": 1, "theorem1": 0, "beta2_naive": 0}


@pytest.fixture(params=GEOMETRIC_IDS)
def geometric_id(request):
    return request.param


_acceptance: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        status = "PASS" if rep.passed else "FAIL"
        if _acceptance.get(label) != "FAIL":
            _acceptance[label] = status


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"{_acceptance[label]}  {label}")
