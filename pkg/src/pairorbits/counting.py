"""Cardinalities of characteristic submodules and element orbits, as polynomials in q."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatch
from .partition import Partition
from .poset import OrderIdeal, enumerate_ideals, max_elements, moebius
from .polynomial import IntPolynomial


def char_submodule_exponent(lam: Partition, ideal: OrderIdeal) -> int:
    if ideal.context != lam:
        raise ContextMismatch(f"ideal over {ideal.context}, expected {lam}")
    return sum(
        r * (l - (l if b is None else b))
        for (l, r), b in zip(lam.parts, ideal.boundary)
    )


def char_submodule_size(lam: Partition, ideal: OrderIdeal) -> IntPolynomial:
    """|(A_lam)_I| = q^e with e = sum of rho_i * (lam_i - boundary_i)."""
    return IntPolynomial.monomial(char_submodule_exponent(lam, ideal))


def orbit_size(lam: Partition, ideal: OrderIdeal) -> IntPolynomial:
    """Size of the orbit {x : I(x) = I}, by Moebius inversion over ideals below I.

    Zero exactly when the ideal is not realized by any element.
    """
    if ideal.context != lam:
        raise ContextMismatch(f"ideal over {ideal.context}, expected {lam}")
    total = IntPolynomial()
    for J in enumerate_ideals(lam):
        if J <= ideal:
            mu = moebius(J, ideal)
            if mu:
                total = total + mu * char_submodule_size(lam, J)
    return total


@dataclass(frozen=True)
class CanonicalElement:
    """Orbit representative: pi^v at copy 1 of row l for each maximal (v, l)."""

    context: Partition
    entries: tuple[tuple[int, int, int], ...]  # (part, copy index, exponent)

    def coordinates(self) -> dict[tuple[int, int], int]:
        return {(l, r): v for l, r, v in self.entries}

    def __str__(self) -> str:
        coords = self.coordinates()
        cells = []
        for l, rho in self.context.parts:
            for r in range(1, rho + 1):
                v = coords.get((l, r))
                if v is None or v >= l:
                    cells.append("0")
                else:
                    cells.append("1" if v == 0 else ("t" if v == 1 else f"t^{v}"))
        return "(" + ",".join(cells) + ")"


def canonical_element(lam: Partition, ideal: OrderIdeal) -> CanonicalElement:
    if ideal.context != lam:
        raise ContextMismatch(f"ideal over {ideal.context}, expected {lam}")
    pts = sorted(max_elements(ideal), key=lambda p: -p.l)
    return CanonicalElement(lam, tuple((p.l, 1, p.v) for p in pts))
