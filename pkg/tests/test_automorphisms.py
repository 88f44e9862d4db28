from __future__ import annotations

import pytest

from pairorbits.automorphisms import (
    count_pairs_orbits_raw,
    element_orbit_count_raw,
    enumerate_automorphisms,
    raw_stab_orbits,
)
from pairorbits.errors import BudgetExceeded
from pairorbits.oracle import ModuleSpace, n_lambda_at, stab_orbits, stabilizer_context
from pairorbits.partition import delete_first_column, parse_partition as P
from pairorbits.poset import enumerate_realized_ideals

TINY = [P(s) for s in ("1^1", "1^2", "2^1", "2^1,1^1", "2^2", "3^1,1^1")]


def test_automorphism_counts():
    assert sum(1 for _ in enumerate_automorphisms(P("1^2"), 2)) == 6
    assert sum(1 for _ in enumerate_automorphisms(P("1^1"), 3)) == 2
    assert sum(1 for _ in enumerate_automorphisms(P("2^1"), 2)) == 2
    # |GL_2(Z/4)| = 96
    assert sum(1 for _ in enumerate_automorphisms(P("2^2"), 2)) == 96


def test_maps_are_module_maps():
    A = ModuleSpace(P("2^1,1^1"), 3)
    t_times = lambda x: tuple((0,) + c[:-1] for c in x)  # noqa: E731
    for g in list(enumerate_automorphisms(A.shape, 3))[:50]:
        for x in A:
            assert g(t_times(x)) == t_times(g(x))


def test_cap():
    with pytest.raises(BudgetExceeded):
        list(enumerate_automorphisms(P("3^2"), 3, cap=1000))
    with pytest.raises(BudgetExceeded):
        count_pairs_orbits_raw(P("3^1,1^1"), 3, cap=1000)


def test_pairs_examples():
    assert count_pairs_orbits_raw(P("1^2"), 2) == 5
    assert count_pairs_orbits_raw(P("2^1"), 2) == 10
    assert count_pairs_orbits_raw(P("3^1,1^1"), 2) == 46


@pytest.mark.parametrize("p", [2, 3])
def test_pairs_match_oracle(p):
    for lam in TINY:
        assert count_pairs_orbits_raw(lam, p) == n_lambda_at(lam, p)
        assert element_orbit_count_raw(lam, p) == len(enumerate_realized_ideals(lam))


@pytest.mark.parametrize("p", [2, 3])
def test_pi_pairs_count_the_smaller_module(p):
    for lam in TINY:
        assert count_pairs_orbits_raw(lam, p, restrict_to_piA=True) == n_lambda_at(delete_first_column(lam), p)


def test_stabilizer_orbits_match_theorem_shape():
    for lam in TINY:
        for p in (2, 3):
            for I in enumerate_realized_ideals(lam):
                raw = set(raw_stab_orbits(lam, p, I))
                assert raw == set(stab_orbits(stabilizer_context(lam, p, I)))
