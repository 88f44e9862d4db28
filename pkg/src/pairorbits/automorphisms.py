"""Direct enumeration of Aut(A_lam) for tiny modules.

A module map is a block matrix: the image of generator s in summand t is
c_{t,s} with c_{t,s} in t^{max(0, m_t - m_s)} R / t^{m_t}.  Since the map is
F_p-linear on digit vectors we apply it with one integer matrix product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, OracleInconsistency
from .oracle import ModuleElement, ModuleSpace, realize
from .partition import Partition, weight
from .poset import OrderIdeal, enumerate_realized_ideals

DEFAULT_CAP = 2**20


@dataclass(frozen=True)
class ModuleMap:
    space: ModuleSpace
    blocks: tuple[tuple[tuple[int, ...], ...], ...]  # blocks[t][s], length m_t, ascending

    @cached_property
    def matrix(self) -> np.ndarray:
        """Digit-space matrix M with digits(g(x)) = M @ digits(x) mod p."""
        S = self.space
        M = np.zeros((S.weight, S.weight), dtype=np.int64)
        for t, (ot, mt) in enumerate(zip(S.offsets, S.summands)):
            for s, (os_, ms) in enumerate(zip(S.offsets, S.summands)):
                c = self.blocks[t][s]
                for a in range(ms):
                    for e, ce in enumerate(c):
                        if ce and a + e < mt:
                            M[ot + a + e, os_ + a] += ce
        return M % S.p

    def __call__(self, x: ModuleElement) -> ModuleElement:
        S = self.space
        flat = np.array([d for coord in x for d in coord], dtype=np.int64)
        img = (self.matrix @ flat) % S.p
        return tuple(tuple(int(v) for v in img[o:o + m]) for o, m in zip(S.offsets, S.summands))

    def permutation(self) -> np.ndarray:
        """Codes of g(x) for x in code order."""
        S = self.space
        img = (S.digits.astype(np.int64) @ self.matrix.T) % S.p
        return img @ (S.p ** np.arange(S.weight, dtype=np.int64))


def endomorphism_count(lam: Partition, p: int) -> int:
    return p ** sum(min(a, b) for a in lam.summands() for b in lam.summands())


def _residue_rank(rows: list[list[int]], p: int) -> int:
    m = [r[:] for r in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def is_bijective_residue(space: ModuleSpace, blocks) -> bool:
    """Invertible iff each equal-part diagonal block is invertible mod t."""
    parts = space.summands
    for l in set(parts):
        idx = [i for i, m in enumerate(parts) if m == l]
        rows = [[blocks[t][s][0] for s in idx] for t in idx]
        if _residue_rank(rows, space.p) < len(idx):
            return False
    return True


def enumerate_automorphisms(lam: Partition, p: int, cap: int = DEFAULT_CAP,
                            cross_check: bool = True) -> Iterator[ModuleMap]:
    """Every automorphism of A_lam over F_p[t].

    With ``cross_check`` each candidate's bijectivity is also decided by
    evaluating it on all of A (the image of the generators must span A), and
    disagreement with the residue criterion raises.
    """
    if endomorphism_count(lam, p) > cap:
        raise BudgetExceeded(
            f"{endomorphism_count(lam, p)} endomorphisms of {lam} at p={p} exceed the cap {cap}"
        )
    S = ModuleSpace(lam, p)
    parts = S.summands
    cells = []
    for mt in parts:
        for ms in parts:
            lo = max(0, mt - ms)
            cells.append([(0,) * lo + tail for tail in itertools.product(range(p), repeat=mt - lo)])
    n = len(parts)
    for combo in itertools.product(*cells):
        blocks = tuple(tuple(combo[t * n:(t + 1) * n]) for t in range(n))
        ok = is_bijective_residue(S, blocks)
        g = ModuleMap(S, blocks)
        if cross_check:
            surjective = len(np.unique(g.permutation())) == S.size
            if surjective != ok:
                raise OracleInconsistency(f"residue criterion disagrees with evaluation for {blocks}")
        if ok:
            yield g


@lru_cache(maxsize=32)
def automorphism_permutations(lam: Partition, p: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """(|Aut|, |A|) array: row g lists the codes g(x)."""
    return np.array([g.permutation() for g in enumerate_automorphisms(lam, p, cap)], dtype=np.int64)


def _orbits(perms: np.ndarray, size: int, pair: bool) -> list[np.ndarray]:
    total = size * size if pair else size
    visited = np.zeros(total, dtype=bool)
    out = []
    for z in range(total):
        if visited[z]:
            continue
        if pair:
            x, y = divmod(z, size)
            orbit = np.unique(perms[:, x] * size + perms[:, y])
        else:
            orbit = np.unique(perms[:, z])
        visited[orbit] = True
        out.append(orbit)
    return out


def raw_stab_orbits(lam: Partition, p: int, ideal: OrderIdeal, cap: int = DEFAULT_CAP) -> list[frozenset[int]]:
    """Orbits of the stabilizer of e_I on A, from the automorphisms directly."""
    S = ModuleSpace(lam, p)
    perms = automorphism_permutations(lam, p, cap)
    e = S.code(realize(lam, ideal, p))
    stab = perms[perms[:, e] == e]
    return [frozenset(o.tolist()) for o in _orbits(stab, S.size, pair=False)]


def count_pairs_orbits_raw(lam: Partition, p: int, cap: int = DEFAULT_CAP,
                           restrict_to_piA: bool = False) -> int:
    """Orbits of Aut(A) acting diagonally on A x A (or on piA x piA)."""
    size = p ** weight(lam)
    if size * size > cap:
        raise BudgetExceeded(f"|A x A| = {size * size} exceeds the cap {cap}")
    perms = automorphism_permutations(lam, p, cap)
    orbits = _orbits(perms, size, pair=True)
    if not restrict_to_piA:
        return len(orbits)
    pi = ModuleSpace(lam, p).pi_mask
    return sum(1 for o in orbits if pi[o[0] // size] and pi[o[0] % size])


def element_orbit_count_raw(lam: Partition, p: int, cap: int = DEFAULT_CAP) -> int:
    perms = automorphism_permutations(lam, p, cap)
    return len(_orbits(perms, p ** weight(lam), pair=False))


def realized_ideal_count(lam: Partition) -> int:
    return len(enumerate_realized_ideals(lam))
