"""Append-only line cache of computed polynomials.

One file per quantity; each line is

    <partition>[@<ideal boundary>] : c0 c1 ... cd | provenance | version | timestamp

which is the reference-file grammar plus provenance columns.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Optional

from . import __version__
from .errors import CacheConflict, ParseError
from .partition import Partition, format_partition, parse_partition
from .polynomial import IntPolynomial

CACHE_ENV = "PAIRORBITS_CACHE_DIR"
QUANTITIES = ("n_lambda", "n_ideal", "n1_ideal")


@dataclass(frozen=True)
class ComputationRecord:
    quantity: str
    partition: Partition
    ideal: Optional[str]
    coefficients: tuple[int, ...]
    provenance: str
    version: str = __version__
    timestamp: str = ""

    def __post_init__(self) -> None:
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}")
        if not self.timestamp:
            stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
            object.__setattr__(self, "timestamp", stamp)

    @property
    def key(self) -> str:
        base = format_partition(self.partition)
        return base if self.ideal is None else f"{base}@{self.ideal}"

    @property
    def poly(self) -> IntPolynomial:
        return IntPolynomial(self.coefficients)

    def to_line(self) -> str:
        coeffs = IntPolynomial(self.coefficients).ascending()
        return f"{self.key} : {coeffs} | {self.provenance} | {self.version} | {self.timestamp}"

    @classmethod
    def from_line(cls, quantity: str, line: str) -> ComputationRecord:
        try:
            head, provenance, version, timestamp = (s.strip() for s in line.split("|"))
            key, coeffs = (s.strip() for s in head.split(":"))
            part, _, ideal = key.partition("@")
            return cls(
                quantity,
                parse_partition(part),
                ideal or None,
                IntPolynomial(tuple(int(c) for c in coeffs.split())).coeffs,
                provenance,
                version,
                timestamp,
            )
        except ValueError as exc:
            raise ParseError(f"bad cache line {line!r}: {exc}") from exc


class Cache:
    def __init__(self, directory: Path | str):
        self.directory = Path(directory)

    @classmethod
    def default(cls) -> Cache:
        env = os.environ.get(CACHE_ENV)
        return cls(Path(env) if env else Path.home() / ".cache" / "pairorbits")

    def _file(self, quantity: str) -> Path:
        return self.directory / f"{quantity}.txt"

    def records(self, quantity: str) -> Iterator[ComputationRecord]:
        path = self._file(quantity)
        if not path.exists():
            return
        for line in path.read_text().splitlines():
            if line.strip() and not line.lstrip().startswith("#"):
                yield ComputationRecord.from_line(quantity, line)

    def get(self, quantity: str, partition: Partition, ideal: Optional[str] = None) -> Optional[ComputationRecord]:
        probe = ComputationRecord(quantity, partition, ideal, (), "", timestamp="-").key
        for rec in self.records(quantity):
            if rec.key == probe:
                return rec
        return None

    def put(self, record: ComputationRecord) -> ComputationRecord:
        """Store ``record``; an existing equal entry wins, a different one is an error."""
        old = self.get(record.quantity, record.partition, record.ideal)
        if old is not None:
            if old.coefficients != record.coefficients:
                raise CacheConflict(
                    f"{record.quantity} {record.key}: cached {old.poly} ({old.provenance}) "
                    f"but computed {record.poly} ({record.provenance})"
                )
            return old
        self.directory.mkdir(parents=True, exist_ok=True)
        with self._file(record.quantity).open("a") as fh:
            fh.write(record.to_line() + "\n")
        return record

    def clear(self) -> None:
        for q in QUANTITIES:
            self._file(q).unlink(missing_ok=True)
