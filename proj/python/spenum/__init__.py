"""Nonequivalent spanning trees of series-parallel graphs."""

from ._core import (
    DecompositionError,
    LimitExceeded,
    ParseError,
    ValidationError,
    canonical_code,
    count,
    enumerate,
    from_edges,
    oracle_counts,
    parse,
    random_sp,
    reversal_code,
)

__all__ = [
    "DecompositionError",
    "LimitExceeded",
    "ParseError",
    "ValidationError",
    "canonical_code",
    "count",
    "enumerate",
    "from_edges",
    "oracle_counts",
    "parse",
    "random_sp",
    "reversal_code",
]
__version__ = "0.1.0"
