"""Orbits of pairs in finite modules over a discrete valuation ring.

Symbolic counts come from the lattice of order ideals of the fundamental
poset; ground truth comes from exhaustive computation over F_p[t]/(t^m)
modules, and polynomials in q are recovered by interpolation over primes.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceeded,
    CacheConflict,
    InterpolationError,
    OracleInconsistency,
    PairOrbitsError,
    ParseError,
)
from .partition import Partition, parse_partition  # noqa: E402
from .poset import OrderIdeal, enumerate_ideals, enumerate_realized_ideals  # noqa: E402
from .polynomial import IntPolynomial  # noqa: E402

__all__ = [
    "BudgetExceeded",
    "CacheConflict",
    "IntPolynomial",
    "InterpolationError",
    "OracleInconsistency",
    "OrderIdeal",
    "PairOrbitsError",
    "ParseError",
    "Partition",
    "enumerate_ideals",
    "enumerate_realized_ideals",
    "parse_partition",
]
