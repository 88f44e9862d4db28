"""Partitions with multiplicities, written ``l^r,l^r,...`` with strictly decreasing parts."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import ParseError

_TOKEN = re.compile(r"^([0-9]+)\^([0-9]+)$")


@dataclass(frozen=True)
class Partition:
    """Parts ``(part, multiplicity)`` in strictly decreasing part order.

    The empty tuple is the empty partition.
    """

    parts: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        parts = tuple((int(l), int(r)) for l, r in self.parts)
        object.__setattr__(self, "parts", parts)
        for i, (l, r) in enumerate(parts):
            if l < 1 or r < 1:
                raise ValueError(f"part {l}^{r}: parts and multiplicities must be positive")
            if i and parts[i - 1][0] <= l:
                raise ValueError(f"parts must be strictly decreasing: {self.parts}")

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> Partition:
        return cls(tuple(pairs))

    def __str__(self) -> str:
        return ",".join(f"{l}^{r}" for l, r in self.parts)

    def __repr__(self) -> str:
        return f"Partition({str(self)!r})"

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.parts)

    @property
    def rows(self) -> tuple[int, ...]:
        """The distinct parts, largest first."""
        return tuple(l for l, _ in self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0][0] if self.parts else 0

    def multiplicity(self, part: int) -> int:
        for l, r in self.parts:
            if l == part:
                return r
        return 0

    def summands(self) -> tuple[int, ...]:
        """One entry per cyclic summand, e.g. ``(3, 1, 1)`` for ``3^1,1^2``."""
        return tuple(l for l, r in self.parts for _ in range(r))

    def remove_one(self, part: int) -> Partition:
        """Drop one copy of ``part``."""
        if not self.multiplicity(part):
            raise ValueError(f"{part} is not a part of {self}")
        out = []
        for l, r in self.parts:
            if l == part:
                r -= 1
            if r:
                out.append((l, r))
        return Partition(tuple(out))

    @classmethod
    def from_summands(cls, summands) -> Partition:
        counts: dict[int, int] = {}
        for l in summands:
            counts[l] = counts.get(l, 0) + 1
        return cls(tuple(sorted(counts.items(), reverse=True)))


EMPTY_PARTITION = Partition()


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return EMPTY_PARTITION
    parts = []
    for token in text.split(","):
        m = _TOKEN.match(token)
        if m is None:
            raise ParseError(f"malformed partition token {token!r} (expected l^r)")
        l, r = int(m.group(1)), int(m.group(2))
        if l == 0 or r == 0:
            raise ParseError(f"zero part or multiplicity in token {token!r}")
        if parts and parts[-1][0] <= l:
            raise ParseError(f"token {token!r}: parts must be strictly decreasing")
        parts.append((l, r))
    return Partition(tuple(parts))


def format_partition(lam: Partition) -> str:
    return str(lam)


def weight(lam: Partition) -> int:
    return sum(l * r for l, r in lam.parts)


def delete_first_column(lam: Partition) -> Partition:
    """Partition of pi*A: every part drops by one, zero parts vanish."""
    reduced = tuple((l - 1, r) for l, r in lam.parts if l > 1)
    # strict decrease survives the shift, so no merging is ever needed
    assert all(a[0] > b[0] for a, b in zip(reduced, reduced[1:]))
    return Partition(reduced)


def cap_multiplicities(lam: Partition, cap: int = 2) -> Partition:
    return Partition(tuple((l, min(r, cap)) for l, r in lam.parts))


def in_lambda1_class(lam: Partition) -> bool:
    """Empty, a single part, or two parts differing by one."""
    rows = lam.rows
    if len(rows) <= 1:
        return True
    return len(rows) == 2 and rows[0] - rows[1] == 1


def partitions_up_to(max_weight: int, max_multiplicity: int | None = None,
                     max_part: int | None = None) -> list[Partition]:
    """All partitions of weight <= max_weight, ordered by weight then reverse-lex."""
    top = max_weight if max_part is None else min(max_part, max_weight)
    out: list[Partition] = []

    def rec(budget: int, below: int, acc: list[tuple[int, int]]) -> None:
        out.append(Partition(tuple(acc)))
        for l in range(min(below - 1, budget), 0, -1):
            rmax = budget // l
            if max_multiplicity is not None:
                rmax = min(rmax, max_multiplicity)
            for r in range(1, rmax + 1):
                acc.append((l, r))
                rec(budget - l * r, l, acc)
                acc.pop()

    rec(max_weight, top + 1, [])
    out.sort(key=lambda lam: (weight(lam), [(-l, -r) for l, r in lam.parts]))
    return out
