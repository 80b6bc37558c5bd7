"""Catalan's constant from central-binomial series.

Four geometrically convergent kernels (Ramanujan, Lupas, Sun, and the
8^-n alternating series) plus the naive Dirichlet-beta series, summed
either incrementally or by binary splitting, together with asymptotic
term estimates and independent numerical oracles for the hypergeometric
identities behind the fast series.
"""

from .errors import (
    CrossCheckError,
    DomainError,
    NotConvergedError,
    UnsupportedSeriesError,
)
from .precision import PrecisionContext
from .kernels import SeriesId, SeriesSpec, SPECS, additive_constant, term_exact, term_ratio
from .engine import (
    BinSplitNode,
    PartialSumResult,
    reference_G,
    sum_binary_splitting,
    sum_incremental,
    sum_to_digits,
    tail_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BinSplitNode",
    "CrossCheckError",
    "DomainError",
    "NotConvergedError",
    "PartialSumResult",
    "PrecisionContext",
    "SPECS",
    "SeriesId",
    "SeriesSpec",
    "UnsupportedSeriesError",
    "additive_constant",
    "reference_G",
    "sum_binary_splitting",
    "sum_incremental",
    "sum_to_digits",
    "tail_bound",
    "term_exact",
    "term_ratio",
]
