"""Ground-truth orbit counts over concrete modules.

The ring is F_p[t] truncated per row: a summand of part ``m`` is F_p[t]/(t^m).
Elements are tuples of coordinates, each a tuple of ``m`` coefficients in
ascending powers of t.  Element codes enumerate the module in a fixed order
(flat digit ``k`` has weight ``p**k``).

For a realized ideal I the module splits as A = A' + A'' (A' holds the copy-1
summand of each row carrying a maximal element of I).  With J = I(x'/R e_I')
and K = I(x''), the stabilizer orbit of x = (x', x'') is

    (x' + (A')_{J u K})  x  ((A'')*_K + (A'')_J)

and the orbit count is obtained two ways: by claiming whole orbits while
scanning A, and by bucketing elements on (J, K) and dividing grouped
populations by orbit size.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Optional

import numpy as np

from .errors import BudgetExceeded, OracleInconsistency
from .partition import Partition, weight
from .poset import (
    Boundary,
    OrderIdeal,
    boundary_at,
    enumerate_realized_ideals,
    ideal_from_generators,
    is_realized,
    max_elements,
)

INFINITY = math.inf
DEFAULT_BUDGET = 10**7
DEFAULT_CLAIM_BUDGET = 3 * 10**5

Coordinate = tuple[int, ...]
ModuleElement = tuple[Coordinate, ...]

_NONE = 1 << 20  # EMPTY / infinite valuation inside numpy arrays


def valuation(coord: Coordinate, part: Optional[int] = None) -> float:
    """Index of the lowest nonzero coefficient; INFINITY for zero."""
    for i, c in enumerate(coord):
        if c:
            return i
    return INFINITY


class ModuleSpace:
    """A_lam over F_p[t] with a fixed element numbering."""

    def __init__(self, shape: Partition, p: int):
        self.shape = shape
        self.p = p
        self.summands = shape.summands()
        offs, acc = [], 0
        for m in self.summands:
            offs.append(acc)
            acc += m
        self.offsets = tuple(offs)
        self.weight = acc
        self.size = p ** acc

    def __repr__(self) -> str:
        return f"ModuleSpace({self.shape}, p={self.p})"

    def zero(self) -> ModuleElement:
        return tuple((0,) * m for m in self.summands)

    def element(self, code: int) -> ModuleElement:
        flat = []
        for _ in range(self.weight):
            code, d = divmod(code, self.p)
            flat.append(d)
        return tuple(tuple(flat[o:o + m]) for o, m in zip(self.offsets, self.summands))

    def code(self, x: ModuleElement) -> int:
        out, scale = 0, 1
        for coord in x:
            for d in coord:
                out += (d % self.p) * scale
                scale *= self.p
        return out

    def __iter__(self) -> Iterator[ModuleElement]:
        for code in range(self.size):
            yield self.element(code)

    def add(self, x: ModuleElement, y: ModuleElement) -> ModuleElement:
        p = self.p
        return tuple(tuple((a + b) % p for a, b in zip(u, v)) for u, v in zip(x, y))

    def sub(self, x: ModuleElement, y: ModuleElement) -> ModuleElement:
        p = self.p
        return tuple(tuple((a - b) % p for a, b in zip(u, v)) for u, v in zip(x, y))

    def in_pi_module(self, x: ModuleElement) -> bool:
        return all(c[0] == 0 for c in x)

    def submodule(self, boundary: dict[int, Boundary]) -> Iterator[ModuleElement]:
        """Elements whose row-m coordinates have valuation >= boundary[m]."""
        ranges = []
        for m in self.summands:
            eff = _eff(boundary.get(m), m)
            ranges.append([tuple([0] * eff + list(tail))
                           for tail in itertools.product(range(self.p), repeat=m - eff)])
        for combo in itertools.product(*ranges):
            yield tuple(combo)

    # numpy views -------------------------------------------------------

    @cached_property
    def digits(self) -> np.ndarray:
        codes = np.arange(self.size, dtype=np.int64)
        out = np.empty((self.size, self.weight), dtype=np.int16)
        for k in range(self.weight):
            out[:, k] = (codes // self.p ** k) % self.p
        return out

    @cached_property
    def valuations(self) -> np.ndarray:
        """(size, #summands) valuations, _NONE for zero coordinates."""
        d = self.digits
        out = np.full((self.size, len(self.summands)), _NONE, dtype=np.int64)
        for s, (o, m) in enumerate(zip(self.offsets, self.summands)):
            for a in range(m - 1, -1, -1):
                out[d[:, o + a] != 0, s] = a
        return out

    @cached_property
    def pi_mask(self) -> np.ndarray:
        if not self.summands:
            return np.ones(self.size, dtype=bool)
        return np.all(self.digits[:, list(self.offsets)] == 0, axis=1)

    def generic_boundaries(self, rows: tuple[int, ...]) -> np.ndarray:
        """(size, len(rows)) boundaries of I(x) at the given rows (_NONE = EMPTY)."""
        vals = self.valuations
        out = np.full((self.size, len(rows)), _NONE, dtype=np.int64)
        for r, m in enumerate(rows):
            for s, part in enumerate(self.summands):
                w = vals[:, s] + max(0, m - part)
                np.minimum(out[:, r], w, out=out[:, r])
            out[out[:, r] > m, r] = _NONE
        return out

    def truncation_codes(self, eff: tuple[int, ...]) -> np.ndarray:
        """Integer code of the digits below eff[s] in each summand s."""
        w = np.zeros(self.weight, dtype=np.int64)
        scale = 1
        for o, e in zip(self.offsets, eff):
            for a in range(e):
                w[o + a] = scale
                scale *= self.p
        return self.digits.astype(np.int64) @ w


def _eff(b: Boundary, m: int) -> int:
    return m if b is None or b >= m else b


def ideal_of(x: ModuleElement, shape: Partition) -> OrderIdeal:
    gens = [(valuation(c), len(c)) for c in x if any(c)]
    return ideal_from_generators(shape, gens)


def element_boundaries(x: ModuleElement, rows) -> tuple[Boundary, ...]:
    """Boundary of I(x) at arbitrary rows (x need not live over those rows)."""
    items = [(len(c), valuation(c)) for c in x if any(c)]
    return tuple(boundary_at(items, m) for m in rows)


def realize(lam: Partition, ideal: OrderIdeal, p: int) -> ModuleElement:
    """The canonical element e_I as a concrete module element."""
    pts = {pt.l: pt.v for pt in max_elements(ideal)}
    out, seen = [], set()
    for m in lam.summands():
        v = pts.get(m)
        coord = [0] * m
        if v is not None and m not in seen and v < m:
            coord[v] = 1
        seen.add(m)
        out.append(tuple(coord))
    return tuple(out)


# stabilizer context -----------------------------------------------------


@dataclass(frozen=True)
class StabilizerContext:
    lam: Partition
    p: int
    ideal: OrderIdeal
    prime: ModuleSpace
    dprime: ModuleSpace
    exponents: tuple[int, ...]  # v_j of e_I' on each summand of A'
    prime_positions: tuple[int, ...]  # where A' summands sit among A's summands

    @property
    def rows(self) -> tuple[int, ...]:
        return self.lam.rows

    @property
    def e_prime(self) -> ModuleElement:
        return tuple(
            tuple(1 if a == v else 0 for a in range(m))
            for m, v in zip(self.prime.summands, self.exponents)
        )

    @property
    def principal(self) -> bool:
        return len(self.exponents) == 1

    def split_element(self, x: ModuleElement) -> tuple[ModuleElement, ModuleElement]:
        pos = set(self.prime_positions)
        return (tuple(x[i] for i in self.prime_positions),
                tuple(c for i, c in enumerate(x) if i not in pos))

    def join(self, xp: ModuleElement, xpp: ModuleElement) -> ModuleElement:
        out, it_p, it_pp = [], iter(xp), iter(xpp)
        pos = set(self.prime_positions)
        for i in range(len(xp) + len(xpp)):
            out.append(next(it_p) if i in pos else next(it_pp))
        return tuple(out)


@lru_cache(maxsize=16)
def stabilizer_context(lam: Partition, p: int, ideal: OrderIdeal) -> StabilizerContext:
    if ideal.context != lam:
        raise ValueError(f"ideal over {ideal.context}, expected {lam}")
    if not is_realized(ideal):
        raise ValueError(f"ideal {ideal} is not realized over {lam}")
    pts = sorted(max_elements(ideal), key=lambda pt: -pt.l)
    summands = lam.summands()
    positions = tuple(summands.index(pt.l) for pt in pts)
    rest = lam
    for pt in pts:
        rest = rest.remove_one(pt.l)
    prime = Partition(tuple((pt.l, 1) for pt in pts))
    return StabilizerContext(
        lam, p, ideal,
        ModuleSpace(prime, p), ModuleSpace(rest, p),
        tuple(pt.v for pt in pts), positions,
    )


# boundaries of the image of x' in A'/R e_I' -----------------------------


@lru_cache(maxsize=None)
def _kernel_terms(parts: tuple[int, ...], exps: tuple[int, ...], l: int):
    """F_p-basis of {phi: A' -> R/t^l with phi(e') = 0}.

    phi is given by c_j in t^{max(0, l-m_j)} R/t^l; the basis vector t^a at
    summand j sends e' to t^{a+v_j}.  The kernel is spanned by the vectors
    killed outright plus differences of vectors hitting the same power.
    Each term is a tuple of (summand, shift, sign).
    """
    terms = []
    by_power: dict[int, list[tuple[int, int]]] = {}
    for j, (m, v) in enumerate(zip(parts, exps)):
        for a in range(max(0, l - m), l):
            if a + v >= l:
                terms.append(((j, a, 1),))
            else:
                by_power.setdefault(a + v, []).append((j, a))
    for group in by_power.values():
        (j0, a0) = group[0]
        for j, a in group[1:]:
            terms.append(((j0, a0, 1), (j, a, -1)))
    return tuple(terms)


def _term_image(term, x: ModuleElement, l: int, p: int) -> list[int]:
    out = [0] * l
    for j, a, sign in term:
        coord = x[j]
        for d in range(a, l):
            src = d - a
            if src < len(coord):
                out[d] += sign * coord[src]
    return [c % p for c in out]


def quotient_boundary(ctx: StabilizerContext, x_prime: ModuleElement, l: int,
                      method: str = "auto") -> Boundary:
    """Boundary at row l of I(x'bar), x'bar the image of x' in A'/R e_I'.

    Equals the least valuation of phi(x') over homomorphisms phi: A' -> R/t^l
    killing e_I'.  ``method`` is "fast" (principal ideals only), "kernel"
    (minimum over a kernel basis) or "search" (every homomorphism).
    Returns EMPTY (None) when every such image vanishes.
    """
    if method == "auto":
        method = "fast" if ctx.principal else "kernel"
    p = ctx.p
    if not ctx.exponents:
        return None
    if method == "fast":
        if not ctx.principal:
            raise ValueError("fast path needs a principal ideal")
        v0 = ctx.exponents[0]
        val = valuation(x_prime[0][:v0])
        if val is INFINITY:
            return None
        w = int(val) + max(0, l - v0)
        return w if w < l else None
    if method == "kernel":
        best = INFINITY
        for term in _kernel_terms(ctx.prime.summands, ctx.exponents, l):
            best = min(best, valuation(_term_image(term, x_prime, l, p)))
        return None if best is INFINITY else int(best)
    if method == "search":
        return _quotient_boundary_search(ctx, x_prime, l)
    raise ValueError(f"unknown method {method!r}")


def _quotient_boundary_search(ctx: StabilizerContext, x_prime: ModuleElement, l: int) -> Boundary:
    p = ctx.p
    parts = ctx.prime.summands
    choices = []
    for m in parts:
        lo = max(0, l - m)
        choices.append([
            (0,) * lo + tail for tail in itertools.product(range(p), repeat=l - lo)
        ])
    e = ctx.e_prime
    best = INFINITY
    for cs in itertools.product(*choices):
        if any(_apply_hom(cs, e, l, p)):
            continue
        best = min(best, valuation(_apply_hom(cs, x_prime, l, p)))
    return None if best is INFINITY else int(best)


def _apply_hom(cs, x: ModuleElement, l: int, p: int) -> list[int]:
    out = [0] * l
    for c, coord in zip(cs, x):
        for i, ci in enumerate(c):
            if ci:
                for k, xk in enumerate(coord):
                    if i + k < l:
                        out[i + k] += ci * xk
    return [v % p for v in out]


def _quotient_boundaries_array(ctx: StabilizerContext) -> np.ndarray:
    """(|A'|, len(rows)) array of I(x'bar) boundaries, _NONE for EMPTY."""
    A = ctx.prime
    rows = ctx.rows
    out = np.full((A.size, len(rows)), _NONE, dtype=np.int64)
    if not ctx.exponents:
        return out
    d = A.digits
    p = ctx.p
    for r, l in enumerate(rows):
        col = out[:, r]
        for term in _kernel_terms(A.summands, ctx.exponents, l):
            img = np.zeros((A.size, l), dtype=np.int16)
            for j, a, sign in term:
                o, m = A.offsets[j], A.summands[j]
                for dd in range(a, l):
                    src = dd - a
                    if src < m:
                        img[:, dd] += sign * d[:, o + src]
            img %= p
            nz = img != 0
            v = np.where(nz.any(axis=1), nz.argmax(axis=1), _NONE)
            np.minimum(col, v, out=col)
    return out


# orbit equivalence ---------------------------------------------------------


def _union_at(J: tuple[Boundary, ...], K: tuple[Boundary, ...]) -> tuple[Boundary, ...]:
    return tuple(b if a is None else (a if b is None else min(a, b)) for a, b in zip(J, K))


def stab_orbit_equivalent(ctx: StabilizerContext, x: ModuleElement, y: ModuleElement) -> bool:
    """Whether y lies in the stabilizer orbit of x (x, y in A's own coordinates)."""
    rows = ctx.rows
    xp, xpp = ctx.split_element(x)
    yp, ypp = ctx.split_element(y)
    J = tuple(quotient_boundary(ctx, xp, l) for l in rows)
    K = element_boundaries(xpp, rows)
    B = dict(zip(rows, _union_at(J, K)))
    # y' - x' must lie in (A')_{J u K}
    for m, (a, b) in zip(ctx.prime.summands, zip(yp, xp)):
        eff = _eff(B[m], m)
        if any((u - w) % ctx.p for u, w in zip(a[:eff], b[:eff])):
            return False
    # y'' - b must have ideal K for some b in (A'')_J
    A2 = ctx.dprime
    Jd = dict(zip(rows, J))
    target = ideal_of(xpp, A2.shape)
    return any(ideal_of(A2.sub(ypp, b), A2.shape) == target for b in A2.submodule(Jd))


def equivalence_classes(ctx: StabilizerContext) -> list[frozenset[int]]:
    """Partition A by stab_orbit_equivalent alone (quadratic; tiny modules only)."""
    A = ModuleSpace(ctx.lam, ctx.p)
    reps: list[tuple[ModuleElement, list[int]]] = []
    for code, x in enumerate(A):
        for rep, members in reps:
            if stab_orbit_equivalent(ctx, rep, x):
                members.append(code)
                break
        else:
            reps.append((x, [code]))
    return [frozenset(m) for _, m in reps]


@dataclass(frozen=True)
class OrbitCount:
    bucket: int
    claim: Optional[int] = None

    @property
    def value(self) -> int:
        return self.bucket


class _Tables:
    """Per-(context) numpy tables shared by both counting routes."""

    def __init__(self, ctx: StabilizerContext):
        self.ctx = ctx
        rows = ctx.rows
        radix = max(rows, default=0) + 2
        self.radix = radix
        self.Jkey = _encode(_quotient_boundaries_array(ctx), radix)
        self.Kkey = _encode(ctx.dprime.generic_boundaries(rows), radix)
        self._trunc2: dict = {}
        self._T: dict = {}

    def decode(self, key: int) -> tuple[Boundary, ...]:
        out = []
        for _ in self.ctx.rows:
            key, d = divmod(key, self.radix)
            out.append(None if d == self.radix - 1 else d)
        return tuple(out)

    def prime_eff(self, B: tuple[Boundary, ...]) -> tuple[int, ...]:
        Bd = dict(zip(self.ctx.rows, B))
        return tuple(_eff(Bd[m], m) for m in self.ctx.prime.summands)

    def dprime_eff(self, J: tuple[Boundary, ...]) -> tuple[int, ...]:
        Jd = dict(zip(self.ctx.rows, J))
        return tuple(_eff(Jd[m], m) for m in self.ctx.dprime.summands)

    def trunc2(self, jkey: int) -> np.ndarray:
        if jkey not in self._trunc2:
            eff = self.dprime_eff(self.decode(jkey))
            self._trunc2[jkey] = self.ctx.dprime.truncation_codes(eff)
        return self._trunc2[jkey]

    def T(self, kkey: int, jkey: int) -> np.ndarray:
        """Distinct truncations of the K-orbit of A'' modulo (A'')_J."""
        if (kkey, jkey) not in self._T:
            tc = self.trunc2(jkey)
            self._T[kkey, jkey] = np.unique(tc[self.Kkey == kkey])
        return self._T[kkey, jkey]

    def orbit_size(self, jkey: int, kkey: int) -> int:
        ctx = self.ctx
        J, K = self.decode(jkey), self.decode(kkey)
        B = _union_at(J, K)
        e1 = sum(m - e for m, e in zip(ctx.prime.summands, self.prime_eff(B)))
        e2 = sum(m - e for m, e in zip(ctx.dprime.summands, self.dprime_eff(J)))
        return ctx.p ** (e1 + e2) * len(self.T(kkey, jkey))


def _encode(arr: np.ndarray, radix: int) -> np.ndarray:
    a = np.where(arr >= _NONE, radix - 1, arr)
    key = np.zeros(arr.shape[0], dtype=np.int64)
    for r in range(arr.shape[1] - 1, -1, -1):
        key = key * radix + a[:, r]
    return key


@lru_cache(maxsize=2)
def _tables(ctx: StabilizerContext) -> _Tables:
    return _Tables(ctx)


def _bucket_count(tab: _Tables, pi_only: bool) -> int:
    ctx = tab.ctx
    Jkey, Kkey = tab.Jkey, tab.Kkey
    if pi_only:
        Jkey = Jkey[ctx.prime.pi_mask]
        Kkey = Kkey[ctx.dprime.pi_mask]
    js, jc = np.unique(Jkey, return_counts=True)
    ks, kc = np.unique(Kkey, return_counts=True)
    groups: dict[int, int] = {}
    for j, cj in zip(js.tolist(), jc.tolist()):
        for k, ck in zip(ks.tolist(), kc.tolist()):
            alpha = tab.orbit_size(j, k)
            groups[alpha] = groups.get(alpha, 0) + cj * ck
    total = 0
    for alpha, population in groups.items():
        n, rem = divmod(population, alpha)
        if rem:
            raise OracleInconsistency(
                f"{ctx.lam} p={ctx.p} I={ctx.ideal}: population {population} "
                f"of orbit size {alpha} is not a multiple"
            )
        total += n
    return total


def _claim_count(tab: _Tables, pi_only: bool) -> int:
    ctx = tab.ctx
    N1, N2 = ctx.prime.size, ctx.dprime.size
    visited = bytearray(N1 * N2)
    vis = np.frombuffer(visited, dtype=np.uint8)
    if pi_only:
        outside = ~np.outer(ctx.prime.pi_mask, ctx.dprime.pi_mask).ravel()
        vis[outside] = 1
    cosets: dict = {}
    ys2: dict = {}
    count = 0
    pos = visited.find(0)
    while pos != -1:
        c1, c2 = divmod(pos, N2)
        jkey, kkey = int(tab.Jkey[c1]), int(tab.Kkey[c2])
        B = _union_at(tab.decode(jkey), tab.decode(kkey))
        eff = tab.prime_eff(B)
        if eff not in cosets:
            tc = ctx.prime.truncation_codes(eff)
            order = np.argsort(tc, kind="stable")
            vals, starts = np.unique(tc[order], return_index=True)
            ends = np.append(starts[1:], len(order))
            cosets[eff] = (tc, {v: order[s:e] for v, s, e in zip(vals.tolist(), starts, ends)})
        tc, groups = cosets[eff]
        y1 = groups[int(tc[c1])]
        if (kkey, jkey) not in ys2:
            ys2[kkey, jkey] = np.flatnonzero(np.isin(tab.trunc2(jkey), tab.T(kkey, jkey)))
        y2 = ys2[kkey, jkey]
        idx = (y1[:, None] * N2 + y2[None, :]).ravel()
        if vis[idx].any():
            raise OracleInconsistency(
                f"{ctx.lam} p={ctx.p} I={ctx.ideal}: orbit of element {pos} overlaps "
                "an earlier orbit" + (" or leaves pi*A" if pi_only else "")
            )
        vis[idx] = 1
        count += 1
        pos = visited.find(0, pos + 1)
    return count


def check_budget(lam: Partition, p: int, budget: int) -> None:
    if p ** weight(lam) > budget:
        raise BudgetExceeded(f"|A| = {p}^{weight(lam)} exceeds the enumeration budget {budget}")


@lru_cache(maxsize=None)
def count_stab_orbits(lam: Partition, p: int, ideal: OrderIdeal, restrict_to_piA: bool = False,
                      method: str = "auto", budget: int = DEFAULT_BUDGET,
                      claim_budget: int = DEFAULT_CLAIM_BUDGET) -> OrbitCount:
    """Number of stabilizer orbits of e_I on A (or on pi*A).

    ``method``: "both", "bucket", "claim", or "auto" (both when |A| fits the
    claim budget, bucket otherwise).  When both run they must agree.
    """
    check_budget(lam, p, budget)
    ctx = stabilizer_context(lam, p, ideal)
    if method == "auto":
        method = "both" if p ** weight(lam) <= claim_budget else "bucket"
    tab = _tables(ctx)
    if method == "claim":
        c = _claim_count(tab, restrict_to_piA)
        return OrbitCount(c, c)
    b = _bucket_count(tab, restrict_to_piA)
    if method == "bucket":
        return OrbitCount(b)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    c = _claim_count(tab, restrict_to_piA)
    if b != c:
        raise OracleInconsistency(f"{lam} p={p} I={ideal}: bucket-sum {b} != claim-based {c}")
    return OrbitCount(b, c)


def stab_orbits(ctx: StabilizerContext, restrict_to_piA: bool = False) -> list[frozenset[int]]:
    """Explicit stabilizer orbits as sets of element codes of A (small modules)."""
    A = ModuleSpace(ctx.lam, ctx.p)
    tab = _tables(ctx)
    N2 = ctx.dprime.size
    seen: set[int] = set()
    orbits = []
    for x in A:
        if restrict_to_piA and not A.in_pi_module(x):
            continue
        xp, xpp = ctx.split_element(x)
        c1, c2 = ctx.prime.code(xp), ctx.dprime.code(xpp)
        if c1 * N2 + c2 in seen:
            continue
        jkey, kkey = int(tab.Jkey[c1]), int(tab.Kkey[c2])
        eff = tab.prime_eff(_union_at(tab.decode(jkey), tab.decode(kkey)))
        tc = ctx.prime.truncation_codes(eff)
        y1 = np.flatnonzero(tc == tc[c1])
        y2 = np.flatnonzero(np.isin(tab.trunc2(jkey), tab.T(kkey, jkey)))
        members = frozenset(
            A.code(ctx.join(ctx.prime.element(int(a)), ctx.dprime.element(int(b))))
            for a in y1 for b in y2
        )
        seen.update(int(a) * N2 + int(b) for a in y1 for b in y2)
        orbits.append(members)
    return orbits


@lru_cache(maxsize=None)
def n_lambda_at(lam: Partition, p: int, budget: int = DEFAULT_BUDGET,
                method: str = "auto", claim_budget: int = DEFAULT_CLAIM_BUDGET) -> int:
    """Orbits of pairs in A x A at q = p."""
    check_budget(lam, p, budget)
    return sum(
        count_stab_orbits(lam, p, I, False, method, budget, claim_budget).value
        for I in enumerate_realized_ideals(lam)
    )
