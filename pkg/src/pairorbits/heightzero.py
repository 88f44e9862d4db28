"""Closed-form stabilizer-orbit counts for height-zero principal ideals.

For I generated by (0, lam_i) the module splits as A' = R/pi^{lam_i} (the
summand carrying e_I) plus A'' (everything else), and

    n_{lam,I}(q)  = sum over K          of q^{lam_i}     / |(A')_K|
    n1_{lam,I}(q) = sum over K <= L''   of q^{lam_i - 1} / |(A')_K|

with K running over the realized ideals of lam'' (one per G''-orbit of A'')
and L'' the ideal of pi*A''.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .counting import char_submodule_size
from .errors import NotPrincipalError
from .partition import Partition
from .poset import (
    OrderIdeal,
    enumerate_realized_ideals,
    ideal_from_generators,
    is_height_zero,
    is_principal,
    is_realized,
    max_elements,
    pi_ideal,
    restrict_ideal,
)
from .polynomial import IntPolynomial


@dataclass(frozen=True)
class SplitDecomposition:
    lambda_prime: Partition
    lambda_doubleprime: Partition
    part_index: Optional[int]  # 1-based row of the generator, principal case only


def split(lam: Partition, ideal: OrderIdeal) -> SplitDecomposition:
    """A = A' + A'': one cyclic summand of A' per maximal element of the ideal."""
    if ideal.context != lam:
        raise ValueError(f"ideal over {ideal.context}, expected {lam}")
    if not is_realized(ideal):
        raise ValueError(f"ideal {ideal} is not realized over {lam}")
    rows = sorted({p.l for p in max_elements(ideal)}, reverse=True)
    rest = lam
    for l in rows:
        rest = rest.remove_one(l)
    index = lam.rows.index(rows[0]) + 1 if len(rows) == 1 else None
    return SplitDecomposition(Partition(tuple((l, 1) for l in rows)), rest, index)


def _row(lam: Partition, i: int) -> int:
    if not 1 <= i <= len(lam.rows):
        raise ValueError(f"part index {i} out of range for {lam}")
    return lam.rows[i - 1]


def _shift_exponents(lam: Partition, i: int, only_pi: bool) -> list[int]:
    """Exponents of q^{lam_i - shift} / |(A')_K| over the admissible K."""
    top = _row(lam, i)
    prime = Partition(((top, 1),))
    rest = lam.remove_one(top)
    L = pi_ideal(rest)
    out = []
    for K in enumerate_realized_ideals(rest):
        if only_pi and not K <= L:
            continue
        size = char_submodule_size(prime, restrict_ideal(K, prime))
        out.append(top - (1 if only_pi else 0) - size.degree)
    return out


def n_heightzero_principal(lam: Partition, i: int) -> IntPolynomial:
    top = _row(lam, i)
    prime = Partition(((top, 1),))
    rest = lam.remove_one(top)
    numerator = IntPolynomial.monomial(top)
    total = IntPolynomial()
    for K in enumerate_realized_ideals(rest):
        total = total + numerator.exact_div(char_submodule_size(prime, restrict_ideal(K, prime)))
    return total


def n1_heightzero_principal(lam: Partition, i: int) -> IntPolynomial:
    top = _row(lam, i)
    prime = Partition(((top, 1),))
    rest = lam.remove_one(top)
    L = pi_ideal(rest)
    numerator = IntPolynomial.monomial(top - 1)
    total = IntPolynomial()
    for K in enumerate_realized_ideals(rest):
        if K <= L:
            total = total + numerator.exact_div(char_submodule_size(prime, restrict_ideal(K, prime)))
    return total


def coefficient_profile(lam: Partition, i: int) -> tuple[list[int], list[int]]:
    """Counts a_j, b_j of the ideals K whose quotient term is q^j."""
    top = _row(lam, i)
    a = [0] * (top + 1)
    b = [0] * top
    for j in _shift_exponents(lam, i, only_pi=False):
        a[j] += 1
    for j in _shift_exponents(lam, i, only_pi=True):
        b[j] += 1
    return a, b


def heightzero_principal_ideal(lam: Partition, i: int) -> OrderIdeal:
    return ideal_from_generators(lam, [(0, _row(lam, i))])


def heightzero_ideals(lam: Partition) -> list[OrderIdeal]:
    return [I for I in enumerate_realized_ideals(lam) if is_height_zero(I)]


def heightzero_sum_symbolic(lam: Partition) -> IntPolynomial:
    """Sum of n + n1 over the realized height-zero ideals, all of which must be principal."""
    total = IntPolynomial()
    for I in heightzero_ideals(lam):
        if not is_principal(I):
            raise NotPrincipalError(
                f"height-zero ideal {I} of {lam} is not principal; use interpolation instead"
            )
        (gen,) = max_elements(I)
        i = lam.rows.index(gen.l) + 1
        total = total + n_heightzero_principal(lam, i) + n1_heightzero_principal(lam, i)
    return total
