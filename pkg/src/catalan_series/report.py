"""Deviation table (S_N - G per series) and the JSON/CSV report formats."""

from __future__ import annotations

import csv
import io
import json
import math
import platform
import re
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable

import gmpy2
import mpmath

from .asymptotics import to_scientific
from .engine import reference_G, sum_binary_splitting
from .kernels import GEOMETRIC, SeriesId
from .precision import PrecisionContext

TABLE_SERIES = tuple(s.value for s in GEOMETRIC)  # lupas, ramanujan, sun, theorem1
PAPER_ROWS = (5, 10, 50, 100, 500, 1000)

_CELL_RE = re.compile(r"^([+-])(\d\.\d)e(-?\d+)$")


@dataclass(frozen=True)
class DeviationCell:
    sign: str
    mantissa: float
    exponent: int
    full: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.sign not in "+-" or len(self.sign) != 1:
            raise ValueError(f"bad sign {self.sign!r}")
        if not 1.0 <= self.mantissa < 10.0:
            raise ValueError(f"mantissa {self.mantissa} outside [1, 10)")

    @property
    def text(self) -> str:
        return f"{self.sign}{self.mantissa:.1f}e{self.exponent}"

    @property
    def tenths(self) -> int:
        return round(self.mantissa * 10)

    @classmethod
    def parse(cls, text: str) -> DeviationCell:
        m = _CELL_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse deviation cell {text!r}")
        return cls(m.group(1), float(m.group(2)), int(m.group(3)))

    @classmethod
    def from_value(cls, dev: mpmath.mpf) -> DeviationCell:
        mant, exp10 = to_scientific(abs(dev), sig=2)
        with mpmath.workprec(max(64, dev._mpf_[3])):
            full = mpmath.nstr(dev, 20, min_fixed=1, max_fixed=0)
        return cls("+" if dev > 0 else "-", mant, exp10, full)


@dataclass(frozen=True)
class DeviationRow:
    N: int
    cells: dict[str, DeviationCell]

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"N": self.N}
        for sid in TABLE_SERIES:
            c = self.cells[sid]
            out[sid] = {"sign": c.sign, "mantissa": c.mantissa, "exponent": c.exponent,
                        "text": c.text, "deviation": c.full}
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> DeviationRow:
        cells = {
            sid: DeviationCell(d[sid]["sign"], float(d[sid]["mantissa"]), int(d[sid]["exponent"]),
                               d[sid].get("deviation", ""))
            for sid in TABLE_SERIES
        }
        return cls(int(d["N"]), cells)


@dataclass(frozen=True)
class DeviationTable:
    rows: tuple[DeviationRow, ...]

    def row(self, N: int) -> DeviationRow:
        for r in self.rows:
            if r.N == N:
                return r
        raise KeyError(N)

    def to_records(self) -> list[dict[str, Any]]:
        return [r.to_dict() for r in self.rows]

    @classmethod
    def from_records(cls, records: Iterable[dict[str, Any]]) -> DeviationTable:
        return cls(tuple(DeviationRow.from_dict(r) for r in records))

    def to_json(self) -> str:
        return json.dumps(self.to_records(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> DeviationTable:
        return cls.from_records(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", *TABLE_SERIES])
        for r in self.rows:
            w.writerow([r.N, *(r.cells[s].text for s in TABLE_SERIES)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> DeviationTable:
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames != ["N", *TABLE_SERIES]:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        rows = [
            DeviationRow(int(rec["N"]), {s: DeviationCell.parse(rec[s]) for s in TABLE_SERIES})
            for rec in reader
        ]
        return cls(tuple(rows))

    def to_text(self) -> str:
        width = 16
        lines = ["N".rjust(6) + "".join(s.rjust(width) for s in TABLE_SERIES)]
        for r in self.rows:
            cells = "".join(r.cells[s].text.rjust(width) for s in TABLE_SERIES)
            lines.append(str(r.N).rjust(6) + cells)
        lines.append("deviation = S_N - G, S_N summing indices n0..N inclusive; sun is conjectured")
        return "\n".join(lines) + "\n"


def table_digits(N: int) -> int:
    """Working digits for row N: the smallest deviation is about 8^-N."""
    return math.ceil(0.91 * N) + 30


def deviation_table(Ns: Iterable[int]) -> DeviationTable:
    """S_N - G for each N and each geometric kernel, S_N over indices n0..N."""
    Ns = list(Ns)
    if not Ns or any(N < 1 for N in Ns):
        raise ValueError("every N must be >= 1")
    ref_digits = table_digits(max(Ns)) + 10
    G = reference_G(ref_digits)
    rows = []
    for N in Ns:
        ctx = PrecisionContext(table_digits(N))
        cells = {}
        for sid in TABLE_SERIES:
            s = sum_binary_splitting(SeriesId(sid), N, ctx).value
            with mpmath.workdps(ref_digits + 5):
                dev = s - G
            cells[sid] = DeviationCell.from_value(dev)
        rows.append(DeviationRow(N, cells))
    return DeviationTable(tuple(rows))


def versions() -> dict[str, str]:
    from . import __version__

    return {
        "catalan_series": __version__,
        "mpmath": mpmath.__version__,
        "gmpy2": gmpy2.version(),
        "python": platform.python_version(),
    }


@dataclass
class ReportEnvelope:
    command: str
    params: dict[str, Any]
    results: Any
    version: dict[str, str]
    elapsed_ms: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> ReportEnvelope:
        d = json.loads(text)
        return cls(d["command"], d["params"], d["results"], d["version"], d["elapsed_ms"])
