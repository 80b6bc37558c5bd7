"""Command-line interface.

Usage:
    catalan-series compute --series theorem1 --digits 1000 --method binsplit
    catalan-series table 5 10 50 --format csv
    catalan-series estimate --series ramanujan --digits 307
    catalan-series verify --level full
    catalan-series bench --digits 1000 --repetitions 3

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 internal cross-check failure.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from typing import Any

import click

from .asymptotics import digits_per_term, predict_terms_for_digits
from .engine import format_truncated, reference_digits, sum_to_digits, terms_needed
from .errors import CrossCheckError, DomainError, UnsupportedSeriesError
from .kernels import GEOMETRIC, SeriesId, get_spec
from .report import PAPER_ROWS, ReportEnvelope, deviation_table, versions
from .verification import run_verification

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CROSS_CHECK = 3

ALL_SERIES = [s.value for s in SeriesId]
FORMATS = ["text", "csv", "json"]

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _envelope(command: str, params: dict[str, Any], results: Any, start: float) -> str:
    env = ReportEnvelope(command, params, results, versions(), round((time.perf_counter() - start) * 1e3, 3))
    return env.to_json()


def _usage_fail(message: str) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(EXIT_USAGE)


def _cross_check_fail(message: str) -> None:
    click.echo(f"Cross-check failure: {message}", err=True)
    sys.exit(EXIT_CROSS_CHECK)


def _geometric_or_usage(series: str) -> SeriesId:
    sid = SeriesId(series)
    if not get_spec(sid).geometric:
        _usage_fail(f"{series} is not supported by this command (no geometric convergence)")
    return sid


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli() -> None:
    """Catalan's constant from central-binomial series."""


@cli.command()
@click.option("--series", type=click.Choice(ALL_SERIES), default="theorem1", show_default=True)
@click.option("--digits", type=click.IntRange(min=1), required=True)
@click.option("--method", type=click.Choice(["incremental", "binsplit"]), default="binsplit", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def compute(series: str, digits: int, method: str, fmt: str, out: str | None) -> None:
    """Print G truncated to DIGITS decimals using one series."""
    start = time.perf_counter()
    sid = _geometric_or_usage(series)
    spec = get_spec(sid)
    t0 = time.perf_counter()
    value, n_used = sum_to_digits(sid, digits, method=method)
    text = format_truncated(value, digits)
    seconds = time.perf_counter() - t0
    try:
        expected = reference_digits(digits)
    except CrossCheckError as exc:
        _cross_check_fail(str(exc))
    if text != expected:
        _cross_check_fail(f"{series} disagrees with the reference value of G at {digits} digits")
    status = "conjecture consistent" if spec.conjectured else "proven identity"
    if fmt == "json":
        results = {"series": sid.value, "digits": text, "N_used": n_used, "status": status,
                   "compute_seconds": round(seconds, 6)}
        _emit(_envelope("compute", {"series": sid.value, "digits": digits, "method": method},
                        results, start), out)
        return
    lines = []
    if spec.conjectured:
        lines.append(f"NOTE: {sid.value} is a conjectured series; agreement with G is numerical "
                     f"support only ({status} to {digits} digits).")
    lines.append(text)
    lines.append(f"# series={sid.value} method={method} N_used={n_used} time={seconds:.3f}s")
    _emit("\n".join(lines) + "\n", out)


@cli.command()
@click.argument("n_values", nargs=-1, type=click.IntRange(min=1))
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def table(n_values: tuple[int, ...], fmt: str, out: str | None) -> None:
    """Deviations S_N - G of each series' partial sums (default N: 5 10 50 100 500 1000)."""
    start = time.perf_counter()
    Ns = list(n_values) or list(PAPER_ROWS)
    tab = deviation_table(Ns)
    if fmt == "csv":
        _emit(tab.to_csv(), out)
    elif fmt == "json":
        _emit(_envelope("table", {"N": Ns}, tab.to_records(), start), out)
    else:
        _emit(tab.to_text(), out)


@cli.command()
@click.option("--series", type=click.Choice(ALL_SERIES), default="theorem1", show_default=True)
@click.option("--digits", type=click.IntRange(min=1), required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def estimate(series: str, digits: int, fmt: str, out: str | None) -> None:
    """Predict the number of terms needed for DIGITS digits."""
    start = time.perf_counter()
    sid = _geometric_or_usage(series)
    predicted = predict_terms_for_digits(sid, digits)
    rate = digits_per_term(sid)
    exact = terms_needed(sid, Fraction(1, 10**digits))
    results = {"series": sid.value, "digits": digits, "predicted_N": predicted,
               "digits_per_term": rate, "tail_bound_N": exact}
    if fmt == "json":
        _emit(_envelope("estimate", {"series": sid.value, "digits": digits}, results, start), out)
        return
    _emit(
        f"series={sid.value} digits={digits}\n"
        f"predicted N (leading-order term estimate): {predicted}\n"
        f"N from exact tail bound: {exact}\n"
        f"digits per term: {rate:.5f}\n",
        out,
    )


@cli.command()
@click.option("--level", type=click.Choice(["fast", "full"]), default="fast", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def verify(level: str, fmt: str, out: str | None) -> None:
    """Run the identity oracles; exit 1 if any check fails."""
    start = time.perf_counter()
    try:
        results = run_verification(level)
    except CrossCheckError as exc:
        _cross_check_fail(str(exc))
    failed = [r for r in results if not r.passed]
    if fmt == "json":
        _emit(_envelope("verify", {"level": level}, [r.to_dict() for r in results], start), out)
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'}  {r.name}: residual {r.residual:.3e} (< {r.threshold:.1e})"
            for r in results
        ]
        lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
        _emit("\n".join(lines) + "\n", out)
    if failed:
        sys.exit(EXIT_VERIFY_FAILED)


@cli.command()
@click.option("--digits", type=click.IntRange(min=10), default=1000, show_default=True)
@click.option("--repetitions", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def bench(digits: int, repetitions: int, fmt: str, out: str | None) -> None:
    """Time every kernel with both summation methods."""
    start = time.perf_counter()
    rows = []
    strings = set()
    for sid in GEOMETRIC:
        for method in ("incremental", "binsplit"):
            best = float("inf")
            for _ in range(repetitions):
                t0 = time.perf_counter()
                value, n_used = sum_to_digits(sid, digits, method=method)
                best = min(best, time.perf_counter() - t0)
            strings.add(format_truncated(value, digits))
            rows.append({"series": sid.value, "method": method, "terms": n_used,
                         "seconds": best, "ns_per_digit": best * 1e9 / digits})
    if len(strings) != 1:
        _cross_check_fail(f"kernels disagree at {digits} digits")
    if fmt == "json":
        _emit(_envelope("bench", {"digits": digits, "repetitions": repetitions}, rows, start), out)
        return
    lines = [f"{'series':<10} {'method':<12} {'terms':>7} {'seconds':>10} {'ns/digit':>12}"]
    for r in rows:
        lines.append(f"{r['series']:<10} {r['method']:<12} {r['terms']:>7} "
                     f"{r['seconds']:>10.4f} {r['ns_per_digit']:>12.1f}")
    lines.append(f"all values agree to {digits} digits")
    _emit("\n".join(lines) + "\n", out)


def main(argv: list[str] | None = None) -> None:
    try:
        cli.main(args=argv, prog_name="catalan-series", standalone_mode=True)
    except (DomainError, UnsupportedSeriesError) as exc:
        _usage_fail(str(exc))


if __name__ == "__main__":
    main()
