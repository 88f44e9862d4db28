from __future__ import annotations

import pytest

from pairorbits.errors import NotPrincipalError
from pairorbits.heightzero import (
    coefficient_profile,
    heightzero_principal_ideal,
    heightzero_sum_symbolic,
    n1_heightzero_principal,
    n_heightzero_principal,
    split,
)
from pairorbits.oracle import count_stab_orbits
from pairorbits.partition import EMPTY_PARTITION, parse_partition as P, partitions_up_to
from pairorbits.poset import empty_ideal, ideal_from_generators
from pairorbits.polynomial import IntPolynomial, Q

G = IntPolynomial.geometric


def test_split():
    lam = P("3^1,2^1")
    s = split(lam, heightzero_principal_ideal(lam, 1))
    assert (s.lambda_prime, s.lambda_doubleprime, s.part_index) == (P("3^1"), P("2^1"), 1)
    s = split(P("4^3"), heightzero_principal_ideal(P("4^3"), 1))
    assert (s.lambda_prime, s.lambda_doubleprime) == (P("4^1"), P("4^2"))
    s = split(P("1^1"), heightzero_principal_ideal(P("1^1"), 1))
    assert (s.lambda_prime, s.lambda_doubleprime) == (P("1^1"), EMPTY_PARTITION)
    s = split(lam, empty_ideal(lam))
    assert (s.lambda_prime, s.lambda_doubleprime) == (EMPTY_PARTITION, lam)
    with pytest.raises(ValueError):
        split(P("3^1,1^1"), ideal_from_generators(P("3^1,1^1"), [(3, 3)]))


def test_single_row():
    for l in range(1, 7):
        lam = P(f"{l}^1")
        assert n_heightzero_principal(lam, 1) == Q**l
        assert n1_heightzero_principal(lam, 1) == Q ** (l - 1)
        a, b = coefficient_profile(lam, 1)
        assert a == [0] * l + [1] and b == [0] * (l - 1) + [1]


def test_repeated_row():
    for l in range(1, 6):
        for rho in (2, 3, 4):
            lam = P(f"{l}^{rho}")
            assert n_heightzero_principal(lam, 1) == G(0, l)
            assert n1_heightzero_principal(lam, 1) == G(0, l - 1)


def test_adjacent_rows():
    lam = P("3^1,2^1")
    assert n_heightzero_principal(lam, 2) == 2 * Q**2 + Q + 1
    assert n1_heightzero_principal(lam, 1) == Q**2 + Q
    assert n1_heightzero_principal(lam, 2) == 2 * Q + 1
    assert coefficient_profile(lam, 2)[0][2] == 2


def test_three_one():
    lam = P("3^1,1^1")
    assert n_heightzero_principal(lam, 1) == Q**3 + Q**2
    assert (n_heightzero_principal(lam, 2), n1_heightzero_principal(lam, 2)) == (3 * Q + 1, IntPolynomial((3,)))


def test_bad_index():
    with pytest.raises(ValueError):
        n_heightzero_principal(P("2^1"), 2)


def test_sum_symbolic():
    assert heightzero_sum_symbolic(P("3^1,2^1")).coeffs == (2, 5, 4, 1)
    assert heightzero_sum_symbolic(P("1^1")) == Q + 1
    with pytest.raises(NotPrincipalError):
        heightzero_sum_symbolic(P("3^1,1^1"))


def test_profiles_are_coefficients():
    for lam in partitions_up_to(8):
        for i, l in enumerate(lam.rows, 1):
            a, b = coefficient_profile(lam, i)
            n, n1 = n_heightzero_principal(lam, i), n1_heightzero_principal(lam, i)
            assert a == [n.coefficient(j) for j in range(l + 1)]
            assert b == [n1.coefficient(j) for j in range(l)]
            assert n.degree == l and n1.degree == l - 1
            assert n.is_nonnegative() and n1.is_nonnegative()


@pytest.mark.parametrize("p", [2, 3])
def test_closed_forms_match_oracle(p):
    for lam in partitions_up_to(5):
        for i in range(1, len(lam.rows) + 1):
            I = heightzero_principal_ideal(lam, i)
            assert count_stab_orbits(lam, p, I).value == n_heightzero_principal(lam, i)(p)
            assert count_stab_orbits(lam, p, I, True).value == n1_heightzero_principal(lam, i)(p)
