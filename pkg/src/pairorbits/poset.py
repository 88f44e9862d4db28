"""The fundamental poset of pairs ``(v, l)``, ``0 <= v <= l``, and its order ideals.

An ideal is stored by its boundary: for each row ``l`` the least ``v`` with
``(v, l)`` in the ideal, or ``EMPTY`` (``None``) when the row is absent.  The
row then holds exactly the points ``b <= v <= l``.

The boundary at ``l`` is ``min{v | (v,l) in I}``.  A variant written with an
inner ``min(v,l)`` does not typecheck as a point of P and is read as this one.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

from .errors import ContextMismatch, ParseError
from .partition import Partition

EMPTY = None
Boundary = Optional[int]


class PosetPoint(NamedTuple):
    v: int
    l: int


def point_leq(a: PosetPoint, b: PosetPoint) -> bool:
    return a[0] >= b[0] and a[1] - a[0] <= b[1] - b[0]


def reach(v: int, l: int, m: int) -> Boundary:
    """Least w with (w, m) <= (v, l), or EMPTY if row m gets nothing."""
    w = v + max(0, m - l)
    return w if w <= m else EMPTY


def _bmin(a: Boundary, b: Boundary) -> Boundary:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _bmax(a: Boundary, b: Boundary) -> Boundary:
    if a is None or b is None:
        return None
    return max(a, b)


def _bkey(b: Boundary) -> float:
    return float("inf") if b is None else b


def boundary_at(items: Iterable[tuple[int, Boundary]], m: int) -> Boundary:
    """Boundary at row ``m`` of the ideal generated by the given row boundaries."""
    out: Boundary = EMPTY
    for l, b in items:
        if b is not None:
            out = _bmin(out, reach(b, l, m))
    return out


@dataclass(frozen=True)
class OrderIdeal:
    """An ideal of P whose maximal elements lie in the rows of ``context``."""

    context: Partition
    boundary: tuple[Boundary, ...]

    def __post_init__(self) -> None:
        rows = self.context.rows
        if len(self.boundary) != len(rows):
            raise ValueError(f"boundary {self.boundary} does not match rows {rows}")
        for b, l in zip(self.boundary, rows):
            if b is not None and not 0 <= b <= l:
                raise ValueError(f"boundary entry {b} out of range for row {l}")
        if not _closed(rows, self.boundary):
            raise ValueError(f"boundary {self.boundary} is not downward closed over {rows}")

    @property
    def rows(self) -> tuple[int, ...]:
        return self.context.rows

    def row_items(self) -> Iterable[tuple[int, Boundary]]:
        return zip(self.context.rows, self.boundary)

    def at(self, m: int) -> Boundary:
        return boundary_at(self.row_items(), m)

    def points(self) -> frozenset[PosetPoint]:
        return frozenset(
            PosetPoint(v, l)
            for l, b in self.row_items() if b is not None
            for v in range(b, l + 1)
        )

    def is_empty(self) -> bool:
        return all(b is None for b in self.boundary)

    def _check(self, other: OrderIdeal) -> None:
        if self.context != other.context:
            raise ContextMismatch(f"ideals over {self.context} and {other.context}")

    def __le__(self, other: OrderIdeal) -> bool:
        self._check(other)
        return all(_bkey(a) >= _bkey(b) for a, b in zip(self.boundary, other.boundary))

    def __lt__(self, other: OrderIdeal) -> bool:
        return self <= other and self != other

    def __or__(self, other: OrderIdeal) -> OrderIdeal:
        return union(self, other)

    def __and__(self, other: OrderIdeal) -> OrderIdeal:
        return intersection(self, other)

    def __str__(self) -> str:
        return format_boundary(self.boundary)


@dataclass(frozen=True)
class GenericIdeal:
    """An ideal of P given by its boundary on every row ``1..top``."""

    boundary: tuple[Boundary, ...]

    @property
    def top(self) -> int:
        return len(self.boundary)

    def row_items(self) -> Iterable[tuple[int, Boundary]]:
        return zip(range(1, self.top + 1), self.boundary)

    def at(self, m: int) -> Boundary:
        return boundary_at(self.row_items(), m)


def _closed(rows: tuple[int, ...], boundary: tuple[Boundary, ...]) -> bool:
    for li, bi in zip(rows, boundary):
        if bi is None:
            continue
        for lj, bj in zip(rows, boundary):
            w = reach(bi, li, lj)
            if w is not None and (bj is None or bj > w):
                return False
    return True


def generic_ideal(gens: Iterable[tuple[int, int]], top: int) -> GenericIdeal:
    items = [(l, v) for v, l in gens]
    return GenericIdeal(tuple(boundary_at(items, m) for m in range(1, top + 1)))


def empty_ideal(lam: Partition) -> OrderIdeal:
    return OrderIdeal(lam, (EMPTY,) * len(lam.rows))


def ideal_from_generators(lam: Partition, gens: Iterable[tuple[int, int]]) -> OrderIdeal:
    gens = [PosetPoint(*g) for g in gens]
    rows = lam.rows
    for v, l in gens:
        if l not in rows:
            raise ValueError(f"generator ({v},{l}): row {l} is not a part of {lam}")
        if not 0 <= v <= l:
            raise ValueError(f"generator ({v},{l}): valuation out of range")
    items = [(l, v) for v, l in gens]
    return OrderIdeal(lam, tuple(boundary_at(items, m) for m in rows))


def restrict_ideal(ideal: OrderIdeal | GenericIdeal, mu: Partition) -> OrderIdeal:
    """The ideal ``I ∩ P_mu`` as an ideal over the rows of ``mu``."""
    return OrderIdeal(mu, tuple(ideal.at(m) for m in mu.rows))


@lru_cache(maxsize=None)
def enumerate_ideals(lam: Partition) -> tuple[OrderIdeal, ...]:
    rows = lam.rows
    choices = [list(range(l + 1)) + [EMPTY] for l in rows]
    return tuple(
        OrderIdeal(lam, b)
        for b in itertools.product(*choices)
        if _closed(rows, b)
    )


def is_realized(ideal: OrderIdeal) -> bool:
    """True when the ideal is I(x) for some element x of the module."""
    gens = [(b, l) for l, b in ideal.row_items() if b is not None and b < l]
    return ideal_from_generators(ideal.context, gens) == ideal


@lru_cache(maxsize=None)
def enumerate_realized_ideals(lam: Partition) -> tuple[OrderIdeal, ...]:
    return tuple(I for I in enumerate_ideals(lam) if is_realized(I))


def union(I: OrderIdeal, J: OrderIdeal) -> OrderIdeal:
    I._check(J)
    return OrderIdeal(I.context, tuple(_bmin(a, b) for a, b in zip(I.boundary, J.boundary)))


def intersection(I: OrderIdeal, J: OrderIdeal) -> OrderIdeal:
    I._check(J)
    return OrderIdeal(I.context, tuple(_bmax(a, b) for a, b in zip(I.boundary, J.boundary)))


def max_elements(ideal: OrderIdeal) -> frozenset[PosetPoint]:
    tops = [PosetPoint(b, l) for l, b in ideal.row_items() if b is not None]
    return frozenset(
        a for a in tops
        if not any(a != c and point_leq(a, c) for c in tops)
    )


def is_principal(ideal: OrderIdeal) -> bool:
    return len(max_elements(ideal)) <= 1


def is_height_zero(ideal: OrderIdeal) -> bool:
    # a row with boundary 0 sits under a maximal element with v = 0
    return any(b == 0 for b in ideal.boundary)


def pi_ideal(lam: Partition) -> OrderIdeal:
    """The ideal whose characteristic submodule is pi*A."""
    return OrderIdeal(lam, (1,) * len(lam.rows))


@lru_cache(maxsize=None)
def moebius(J: OrderIdeal, I: OrderIdeal) -> int:
    if not J <= I:
        raise ValueError(f"moebius: {J} is not contained in {I}")
    if J == I:
        return 1
    return -sum(
        moebius(J, K) for K in enumerate_ideals(I.context)
        if J <= K and K < I
    )


# text forms -----------------------------------------------------------------

_PAIR = re.compile(r"^\(\s*([0-9]+)\s*,\s*([0-9]+)\s*\)$")


def parse_generators(text: str) -> list[PosetPoint]:
    """Parse ``(v,l);(v,l);...``; the empty string means no generators."""
    text = text.strip()
    if not text or text == "-":
        return []
    out = []
    for token in text.split(";"):
        m = _PAIR.match(token.strip())
        if m is None:
            raise ParseError(f"malformed generator {token!r} (expected (v,l))")
        out.append(PosetPoint(int(m.group(1)), int(m.group(2))))
    return out


def format_generators(points: Iterable[tuple[int, int]]) -> str:
    pts = sorted(points, key=lambda p: (-p[1], p[0]))
    return ";".join(f"({v},{l})" for v, l in pts) or "-"


def format_boundary(boundary: Iterable[Boundary]) -> str:
    return ",".join("-" if b is None else str(b) for b in boundary)
