"""Polynomial recovery from oracle samples, and the identity checks built on it."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable, Optional, Sequence

import sympy

from .errors import BudgetExceeded, InterpolationError, ParseError
from .heightzero import (
    coefficient_profile,
    heightzero_ideals,
    n1_heightzero_principal,
    n_heightzero_principal,
)
from .oracle import DEFAULT_BUDGET, count_stab_orbits, n_lambda_at
from .partition import (
    Partition,
    cap_multiplicities,
    delete_first_column,
    format_partition,
    parse_partition,
    partitions_up_to,
)
from .poset import OrderIdeal, max_elements
from .polynomial import IntPolynomial

REDUCTION_PRIMES = (2, 3, 5, 7)
_q = sympy.Symbol("q")


@dataclass(frozen=True)
class SamplePlan:
    degree_bound: int
    sample_points: tuple[int, ...]
    verification_points: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sample_points) != self.degree_bound + 1:
            raise ValueError("need degree_bound + 1 sample points")
        if set(self.sample_points) & set(self.verification_points):
            raise ValueError("verification points must be held out")

    @classmethod
    def smallest(cls, degree_bound: int, verify: int = 2) -> SamplePlan:
        primes = smallest_primes(degree_bound + 1 + verify)
        return cls(degree_bound, primes[:degree_bound + 1], primes[degree_bound + 1:])

    @property
    def points(self) -> tuple[int, ...]:
        return self.sample_points + self.verification_points

    def describe(self) -> str:
        s = ",".join(map(str, self.sample_points))
        v = ",".join(map(str, self.verification_points))
        return f"interpolated(p={s};check={v})"


def smallest_primes(n: int) -> tuple[int, ...]:
    out, p = [], 1
    for _ in range(n):
        p = sympy.nextprime(p)
        out.append(int(p))
    return tuple(out)


def interpolate(values: Sequence[tuple[int, int]], degree_bound: int,
                checks: Sequence[tuple[int, int]] = ()) -> IntPolynomial:
    """Exact interpolation through the first degree_bound + 1 points.

    Raises InterpolationError when a coefficient is not an integer or the
    result misses any point in ``checks`` (or any unused extra value).
    """
    pts = list(values)
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("sample points must be distinct")
    if len(pts) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} points, got {len(pts)}")
    used, extra = pts[:degree_bound + 1], pts[degree_bound + 1:]
    expr = sympy.interpolate([(sympy.Integer(x), sympy.Integer(y)) for x, y in used], _q)
    coeffs = sympy.Poly(expr, _q).all_coeffs()[::-1]
    if any(not c.is_integer for c in coeffs):
        raise InterpolationError(f"non-integral coefficients {coeffs} at degree bound {degree_bound}")
    poly = IntPolynomial(tuple(int(c) for c in coeffs))
    for x, y in list(extra) + list(checks):
        if poly(x) != y:
            raise InterpolationError(
                f"{poly} gives {poly(x)} at {x}, oracle says {y} (degree bound {degree_bound})"
            )
    return poly


@dataclass(frozen=True)
class Recovery:
    poly: IntPolynomial
    plan: SamplePlan
    samples: tuple[tuple[int, int], ...]

    @property
    def provenance(self) -> str:
        return self.plan.describe()


def _sample_all(sampler: Callable[[int], int], primes: Iterable[int], jobs: int) -> dict[int, int]:
    primes = list(primes)
    if jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return dict(zip(primes, pool.map(sampler, primes)))
    return {p: sampler(p) for p in primes}


def recover(sampler: Callable[[int], int], degree_bound: int, verify: int = 2,
            escalation: int = 2, jobs: int = 1) -> Recovery:
    """Interpolate ``sampler`` over the smallest primes; retry once with a larger bound."""
    cache: dict[int, int] = {}
    bound = degree_bound
    for attempt in range(2):
        plan = SamplePlan.smallest(bound, verify)
        missing = [p for p in plan.points if p not in cache]
        cache.update(_sample_all(sampler, missing, jobs))
        samples = [(p, cache[p]) for p in plan.sample_points]
        checks = [(p, cache[p]) for p in plan.verification_points]
        try:
            poly = interpolate(samples, bound, checks)
            return Recovery(poly, plan, tuple(samples + checks))
        except InterpolationError as exc:
            if attempt:
                raise InterpolationError(f"gave up after escalating to degree {bound}: {exc}") from exc
            bound += escalation
    raise AssertionError("unreachable")


# quantities ---------------------------------------------------------------


def _nlambda_sample(lam: Partition, budget: int, p: int) -> int:
    return n_lambda_at(lam, p, budget)


def _ideal_sample(lam: Partition, ideal: OrderIdeal, pi: bool, budget: int, p: int) -> int:
    return count_stab_orbits(lam, p, ideal, pi, budget=budget).value


def n_lambda_recovery(lam: Partition, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> Recovery:
    rec = recover(partial(_nlambda_sample, lam, budget), lam.largest, jobs=jobs)
    if rec.poly.degree != lam.largest:
        raise InterpolationError(f"n_{lam} = {rec.poly} does not have degree {lam.largest}")
    return rec


def n_lambda_poly(lam: Partition, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> IntPolynomial:
    return n_lambda_recovery(lam, budget, jobs).poly


def is_heightzero_principal(ideal: OrderIdeal) -> bool:
    pts = max_elements(ideal)
    return len(pts) == 1 and next(iter(pts)).v == 0


def symbolic_pair(lam: Partition, ideal: OrderIdeal) -> tuple[IntPolynomial, IntPolynomial]:
    (gen,) = max_elements(ideal)
    i = lam.rows.index(gen.l) + 1
    return n_heightzero_principal(lam, i), n1_heightzero_principal(lam, i)


def n_ideal_recovery(lam: Partition, ideal: OrderIdeal, pi: bool, budget: int = DEFAULT_BUDGET,
                     jobs: int = 1) -> Recovery:
    return recover(partial(_ideal_sample, lam, ideal, pi, budget), lam.largest, jobs=jobs)


def n_ideal_poly(lam: Partition, ideal: OrderIdeal, budget: int = DEFAULT_BUDGET,
                 jobs: int = 1) -> tuple[IntPolynomial, IntPolynomial]:
    """(n_{lam,I}, n1_{lam,I}) by interpolation, checked against the closed form when available."""
    n = n_ideal_recovery(lam, ideal, False, budget, jobs).poly
    n1 = n_ideal_recovery(lam, ideal, True, budget, jobs).poly
    if is_heightzero_principal(ideal):
        sym = symbolic_pair(lam, ideal)
        if (n, n1) != sym:
            raise InterpolationError(
                f"{lam} I={ideal}: interpolated ({n}, {n1}) but closed form gives ({sym[0]}, {sym[1]})"
            )
    return n, n1


# identity checks ------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    lhs: str
    rhs: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.lhs} == {self.rhs}"


@dataclass
class VerificationReport:
    partition: Partition
    checks: list[Check] = field(default_factory=list)
    n_lambda: Optional[IntPolynomial] = None
    heightzero_total: Optional[IntPolynomial] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, lhs, rhs, passed: Optional[bool] = None) -> None:
        ok = (lhs == rhs) if passed is None else passed
        self.checks.append(Check(name, ok, str(lhs), str(rhs)))

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def raise_multiplicities(lam: Partition, to: int = 3) -> Partition:
    """lam with every multiplicity >= 2 raised to ``to``."""
    return Partition(tuple((l, to if r >= 2 else r) for l, r in lam.parts))


def verify_identities(lam: Partition, budget: int = DEFAULT_BUDGET, jobs: int = 1,
                      primes: Sequence[int] = REDUCTION_PRIMES) -> VerificationReport:
    report = VerificationReport(lam)
    tag = format_partition(lam) or "()"
    n = n_lambda_poly(lam, budget, jobs)
    report.n_lambda = n
    tilde = delete_first_column(lam)
    n_tilde = n_lambda_poly(tilde, budget, jobs)

    total = IntPolynomial()
    hz = heightzero_ideals(lam)
    for I in hz:
        pair = (n_ideal_recovery(lam, I, False, budget, jobs).poly,
                n_ideal_recovery(lam, I, True, budget, jobs).poly)
        total = total + pair[0] + pair[1]
        if is_heightzero_principal(I):
            report.add(f"closed form n,n1 for I={I}", "({}, {})".format(*pair),
                       "({}, {})".format(*symbolic_pair(lam, I)))
            a, b = coefficient_profile(lam, lam.rows.index(next(iter(max_elements(I))).l) + 1)
            report.add(f"coefficient profile for I={I}",
                       f"{a} / {b}",
                       f"{_padded(pair[0], len(a))} / {_padded(pair[1], len(b))}")
    report.heightzero_total = total
    report.add(f"IndStep n_{tag} - n_tilde", n - n_tilde, total)

    # same identity pointwise, straight from oracle counts
    for p in primes:
        try:
            lhs = n_lambda_at(lam, p, budget) - n_lambda_at(tilde, p, budget)
            rhs = sum(
                count_stab_orbits(lam, p, I, False, budget=budget).value
                + count_stab_orbits(lam, p, I, True, budget=budget).value
                for I in hz
            )
        except BudgetExceeded:
            continue
        report.add(f"IndStep at p={p}", lhs, rhs)

    capped = cap_multiplicities(lam)
    if capped != lam:
        report.add(f"reduction n_{tag} = n_{capped}", n, n_lambda_poly(capped, budget, jobs))
    lifted = raise_multiplicities(lam)
    if lifted != lam:
        for p in primes:
            try:
                value = n_lambda_at(lifted, p, budget)
            except BudgetExceeded:
                continue
            report.add(f"reduction n_{lifted}({p}) = n_{tag}({p})", value, n(p))
    if capped == lam and lifted == lam:
        report.add("reduction (multiplicities already <= 1)", capped, lam)

    report.add(f"degree of n_{tag}", n.degree, lam.largest)
    report.add(f"n_{tag} = {n} has non-negative coefficients", n.is_nonnegative(), True)
    return report


def _padded(poly: IntPolynomial, length: int) -> list[int]:
    return [poly.coefficient(j) for j in range(length)]


# scanning -------------------------------------------------------------------


def parse_reference(text: str) -> dict[Partition, IntPolynomial]:
    """Lines ``<partition> : c0 c1 ... cd``; ``#`` starts a comment."""
    out: dict[Partition, IntPolynomial] = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"reference line {n}: missing ':' in {raw!r}")
        lhs, rhs = line.split(":", 1)
        try:
            lam = parse_partition(lhs.strip())
            coeffs = tuple(int(c) for c in rhs.split())
        except (ParseError, ValueError) as exc:
            raise ParseError(f"reference line {n}: {exc}") from exc
        if not coeffs:
            raise ParseError(f"reference line {n}: no coefficients")
        out[lam] = IntPolynomial(coeffs)
    return out


def format_reference(entries: dict[Partition, IntPolynomial]) -> str:
    return "".join(f"{format_partition(lam)} : {poly.ascending()}\n" for lam, poly in entries.items())


@dataclass(frozen=True)
class ScanEntry:
    partition: Partition
    poly: Optional[IntPolynomial]
    error: Optional[str] = None
    reference: Optional[IntPolynomial] = None

    @property
    def nonnegative(self) -> Optional[bool]:
        return None if self.poly is None else self.poly.is_nonnegative()

    @property
    def status(self) -> str:
        if self.poly is None:
            return "SKIPPED"
        if not self.poly.is_nonnegative():
            return "NEGATIVE"
        if self.reference is None:
            return "OK"
        return "MATCH" if self.reference == self.poly else "MISMATCH"


@dataclass
class ScanReport:
    entries: list[ScanEntry] = field(default_factory=list)

    @property
    def negative(self) -> list[ScanEntry]:
        return [e for e in self.entries if e.status == "NEGATIVE"]

    @property
    def mismatched(self) -> list[ScanEntry]:
        return [e for e in self.entries if e.status == "MISMATCH"]

    @property
    def passed(self) -> bool:
        return not self.negative and not self.mismatched

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            body = e.error if e.poly is None else str(e.poly)
            out.append(f"{e.status:8} {format_partition(e.partition) or '()'} : {body}")
        return out


def conjecture_scan(max_capped_weight: int, budget: int = DEFAULT_BUDGET,
                    reference: Optional[dict[Partition, IntPolynomial]] = None,
                    max_part: Optional[int] = None, jobs: int = 1) -> ScanReport:
    """n_lam for every lam with multiplicities <= 2 and weight <= max_capped_weight."""
    report = ScanReport()
    for lam in partitions_up_to(max_capped_weight, max_multiplicity=2, max_part=max_part):
        ref = (reference or {}).get(lam)
        try:
            poly = n_lambda_poly(lam, budget, jobs)
        except BudgetExceeded as exc:
            report.entries.append(ScanEntry(lam, None, f"budget: {exc}", ref))
            continue
        report.entries.append(ScanEntry(lam, poly, None, ref))
    return report

