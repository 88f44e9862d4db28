"""Acceptance criteria 1-7, all exact.

Each criterion prints one PASS/FAIL line.  Run standalone with
``python tests/test_acceptance.py`` or through pytest.
"""

from __future__ import annotations

import sys
import time

import pytest

from pairorbits.automorphisms import raw_stab_orbits
from pairorbits.counting import orbit_size
from pairorbits.heightzero import (
    heightzero_sum_symbolic,
    n1_heightzero_principal,
    n_heightzero_principal,
)
from pairorbits.interpolate import (
    conjecture_scan,
    n_ideal_poly,
    n_lambda_poly,
    n_lambda_recovery,
    smallest_primes,
    verify_identities,
)
from pairorbits.oracle import ModuleSpace, equivalence_classes, ideal_of, stabilizer_context
from pairorbits.partition import delete_first_column, parse_partition as P, partitions_up_to, weight
from pairorbits.poset import (
    OrderIdeal,
    enumerate_ideals,
    enumerate_realized_ideals,
    ideal_from_generators,
    moebius,
)
from pairorbits.polynomial import IntPolynomial, Q

G = IntPolynomial.geometric


def criterion_1():
    expected = {
        "": IntPolynomial((1,)),
        "1^1": Q + 2,
        "1^2": Q + 3,
        "1^3": Q + 3,
        "2^1": Q**2 + 2 * Q + 2,
        "2^1,1^1": Q**2 + 5 * Q + 5,
        "2^2": Q**2 + 3 * Q + 5,
        "3^1,1^1": Q**3 + 5 * Q**2 + 7 * Q + 4,
    }
    bad = []
    for text, poly in expected.items():
        lam = P(text)
        rec = n_lambda_recovery(lam)
        primes = smallest_primes(lam.largest + 3)
        if rec.poly != poly or rec.plan.points != primes:
            bad.append(f"{text or '()'} -> {rec.poly} via {rec.plan.points}")
    return not bad, "; ".join(bad) or f"{len(expected)} polynomials reproduced"


def criterion_2():
    lam = P("3^1,1^1")
    got = [
        n_ideal_poly(lam, OrderIdeal(lam, (1, 0))),
        n_ideal_poly(lam, ideal_from_generators(lam, [(2, 3)])),
    ]
    want = [(2 * Q**2 - 1, 2 * Q - 1), (4 * Q - 2, 2 * Q - 1)]
    diff = n_lambda_poly(lam) - n_lambda_poly(delete_first_column(lam))
    ok = got == want and diff == Q**3 + 4 * Q**2 + 5 * Q + 2
    return ok, f"(1,0) -> {got[0][0]}, {got[0][1]}; gen(2,3) -> {got[1][0]}, {got[1][1]}; difference {diff}"


def criterion_3():
    bad = []

    def check(label, got, want):
        if got != want:
            bad.append(f"{label}: {got} != {want}")

    for l in range(1, 7):
        lam = P(f"{l}^1")
        check(f"({l})", (n_heightzero_principal(lam, 1), n1_heightzero_principal(lam, 1)), (Q**l, Q ** (l - 1)))
        for rho in (2, 3):
            lam = P(f"{l}^{rho}")
            check(f"({l}^{rho})", (n_heightzero_principal(lam, 1), n1_heightzero_principal(lam, 1)),
                  (G(0, l), G(0, l - 1)))
    for l1 in (3, 4, 5):
        l2 = l1 - 1
        lam = P(f"{l1}^1,{l2}^1")
        check(f"{lam} I1", (n_heightzero_principal(lam, 1), n1_heightzero_principal(lam, 1)),
              (G(1, l1), G(1, l1 - 1)))
        check(f"{lam} I2", (n_heightzero_principal(lam, 2), n1_heightzero_principal(lam, 2)),
              (G(0, l2 - 1) + 2 * Q**l2, G(0, l2 - 2) + 2 * Q ** (l2 - 1)))
        total = Q**l1 + 4 * Q ** (l1 - 1) + 5 * Q ** (l1 - 2) + G(1, l1 - 3, 4) + 2
        check(f"{lam} total", heightzero_sum_symbolic(lam), total)
    return not bad, "; ".join(bad) or "single rows, repeated rows and adjacent rows all match"


CRITERION_4_SHAPES = ("1^1", "1^2", "2^1", "2^1,1^1", "2^2", "3^1,1^1")


def criterion_4():
    bad, checked = [], 0
    for text in CRITERION_4_SHAPES:
        lam = P(text)
        for p in (2, 3):
            for I in enumerate_realized_ideals(lam):
                classes = set(equivalence_classes(stabilizer_context(lam, p, I)))
                if classes != set(raw_stab_orbits(lam, p, I)):
                    bad.append(f"{text} p={p} I={I}")
                checked += 1
    return not bad, "; ".join(bad) or f"{checked} (partition, prime, ideal) cases"


def criterion_5():
    bad, checks = [], 0
    for lam in partitions_up_to(5, max_multiplicity=2):
        report = verify_identities(lam)
        checks += len(report.checks)
        bad += [f"{lam}: {line}" for line in report.lines() if line.startswith("FAIL")]
    return not bad, "; ".join(bad) or f"{checks} checks passed"


def criterion_6():
    bad = []
    shapes = [lam for lam in partitions_up_to(6) if lam]
    for lam in shapes:
        realized = set(enumerate_realized_ideals(lam))
        ideals = enumerate_ideals(lam)
        if sum((orbit_size(lam, I) for I in realized), IntPolynomial()) != Q ** weight(lam):
            bad.append(f"{lam}: orbit sizes")
        if any(not orbit_size(lam, I).is_zero() for I in ideals if I not in realized):
            bad.append(f"{lam}: unrealized orbit")
        for J in ideals:
            for I in ideals:
                if J <= I:
                    s = sum(moebius(J, K) for K in ideals if J <= K <= I)
                    if s != (J == I):
                        bad.append(f"{lam}: moebius {J} {I}")
        for I in ideals:
            for J in ideals:
                for K in ideals:
                    if I & (J | K) != (I & J) | (I & K) or I | (J & K) != (I | J) & (I | K):
                        bad.append(f"{lam}: distributivity")
        if {ideal_of(x, lam) for x in ModuleSpace(lam, 2)} != realized:
            bad.append(f"{lam}: realized image")
    return not bad, "; ".join(bad[:5]) or f"{len(shapes)} partitions of weight <= 6"


def criterion_7():
    report = conjecture_scan(6, max_part=3)
    skipped = [e for e in report.entries if e.poly is None]
    negative = report.negative
    ok = not negative and not skipped
    detail = f"{len(report.entries)} partitions scanned"
    if negative:
        detail += "; negative: " + ", ".join(f"{e.partition} -> {e.poly}" for e in negative)
    if skipped:
        detail += "; skipped: " + ", ".join(str(e.partition) for e in skipped)
    return ok, detail


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


def _run(n: int) -> tuple[bool, str]:
    start = time.perf_counter()
    ok, detail = CRITERIA[n - 1]()
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} ({time.perf_counter() - start:.1f}s)"
    return ok, line


@pytest.mark.parametrize("n", range(1, 8))
def test_criterion(n, capsys):
    ok, line = _run(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def main() -> int:
    results = [_run(n) for n in range(1, 8)]
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


if __name__ == "__main__":
    sys.exit(main())
