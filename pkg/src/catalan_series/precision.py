"""Working-precision bookkeeping for big-real arithmetic (mpmath)."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import mpmath

_LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class PrecisionContext:
    """Target decimal digits plus guard digits; rounding is always to nearest.

    Big-real operations run under :meth:`workprec`, which sets mpmath's
    binary precision to at least ``ceil((D + g) * log2(10))`` bits.
    """

    target_digits: int
    guard_digits: int = 20

    def __post_init__(self) -> None:
        if not isinstance(self.target_digits, int) or self.target_digits < 1:
            raise ValueError(f"target_digits must be a positive integer, got {self.target_digits!r}")
        if not isinstance(self.guard_digits, int) or self.guard_digits < 5:
            raise ValueError(f"guard_digits must be an integer >= 5, got {self.guard_digits!r}")

    @property
    def rounding(self) -> str:
        return "nearest"

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def bits(self) -> int:
        return math.ceil(self.working_digits * _LOG2_10)

    def with_extra_guard(self, extra: int) -> PrecisionContext:
        return replace(self, guard_digits=self.guard_digits + max(0, extra))

    def workprec(self):
        """Context manager running mpmath at this context's working precision."""
        return mpmath.workprec(self.bits)


def fraction_to_mpf(q) -> mpmath.mpf:
    """Exact rational to mpf, rounded once at the current mpmath precision."""
    return mpmath.mpf(q.numerator) / q.denominator
