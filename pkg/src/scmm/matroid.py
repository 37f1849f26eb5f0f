"""Matroidal and polymatroidal ideals: the exchange condition and exhaustive census.

A square-free ideal generated in degree d is the same thing as a family of
d-subsets of {1..n}; it is matroidal exactly when that family is the set of
bases of a matroid.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

from .errors import OutOfRegimeError, ZeroIdealError
from .monomial import MonomialIdeal, minimalize, monomial_from_mask

__all__ = [
    "BasisFamily",
    "MAX_FAMILY_BITS",
    "is_polymatroidal",
    "is_matroidal",
    "enumerate_matroidal",
    "matroidal_family_masks",
]

MAX_FAMILY_BITS = 24
_CHUNK_BITS = 16


@dataclass(frozen=True)
class BasisFamily:
    n: int
    d: int
    bases: frozenset[frozenset[int]]

    def __post_init__(self):
        for b in self.bases:
            if len(b) != self.d or not b <= set(range(self.n)):
                raise ValueError(f"{sorted(b)} is not a {self.d}-subset of range({self.n})")

    @classmethod
    def from_ideal(cls, I: MonomialIdeal) -> "BasisFamily":
        if not I.is_squarefree or not I.is_equigenerated or I.is_zero:
            raise ValueError("only nonzero square-free equigenerated ideals are basis families")
        bases = frozenset(frozenset(i for i, e in enumerate(g) if e) for g in I.gens)
        return cls(I.n, I.degrees[0], bases)

    def to_ideal(self) -> MonomialIdeal:
        return minimalize(
            (tuple(1 if i in b else 0 for i in range(self.n)) for b in self.bases), self.n
        )


def is_polymatroidal(I: MonomialIdeal) -> bool:
    """Equigenerated and the exchange condition holds on G(I)."""
    if I.is_zero:
        raise ZeroIdealError("exchange condition is undefined for the zero ideal")
    if not I.is_equigenerated:
        return False
    gens = I.gens
    members = set(gens)
    n = I.n
    for u in gens:
        for v in gens:
            if u is v:
                continue
            for i in range(n):
                if v[i] >= u[i]:
                    continue
                for j in range(n):
                    if u[j] < v[j]:
                        w = list(u)
                        w[i] -= 1
                        w[j] += 1
                        if tuple(w) in members:
                            break
                else:
                    return False
    return True


def is_matroidal(I: MonomialIdeal) -> bool:
    return I.is_squarefree and is_polymatroidal(I)


# ------------------------------------------------------------------- census


def _exchange_constraints(subsets: list[int]):
    """(a, b, targets) triples: a family containing subsets a and b must meet targets."""
    index = {s: k for k, s in enumerate(subsets)}
    out = []
    for a, sa in enumerate(subsets):
        for b, sb in enumerate(subsets):
            if a == b:
                continue
            only_a = sa & ~sb
            only_b = sb & ~sa
            for i in range(only_a.bit_length()):
                if not (only_a >> i) & 1:
                    continue
                targets = 0
                for j in range(only_b.bit_length()):
                    if (only_b >> j) & 1:
                        targets |= 1 << index[(sa & ~(1 << i)) | (1 << j)]
                out.append((a, b, targets))
    return out


def _scan_chunk(
    start: int,
    stop: int,
    subsets: list[int],
    constraints,
    full_mask: int,
    require_full_support: bool,
    require_gcd_one: bool,
) -> np.ndarray:
    fam = np.arange(start, stop, dtype=np.uint64)
    ok = fam != 0
    one = np.uint64(1)
    has = [((fam >> np.uint64(k)) & one).astype(bool) for k in range(len(subsets))]
    for a, b, targets in constraints:
        bad = has[a] & has[b] & ((fam & np.uint64(targets)) == 0)
        ok &= ~bad
    if require_full_support or require_gcd_one:
        union = np.zeros_like(fam)
        inter = np.full_like(fam, full_mask)
        for k, s in enumerate(subsets):
            union |= np.where(has[k], np.uint64(s), np.uint64(0))
            inter &= np.where(has[k], np.uint64(s), np.uint64(full_mask))
        if require_full_support:
            ok &= union == np.uint64(full_mask)
        if require_gcd_one:
            ok &= inter == 0
    return fam[ok]


def matroidal_family_masks(
    n: int,
    d: int,
    require_full_support: bool = True,
    require_gcd_one: bool = True,
    jobs: int = 1,
) -> tuple[list[int], list[int]]:
    """Scan every non-empty family of d-subsets; return (subsets, passing family masks).

    Bit k of a family mask selects ``subsets[k]`` (d-subsets in lexicographic
    order, as bitmasks over the variables).
    """
    if n < 1 or not 1 <= d <= n:
        raise OutOfRegimeError(f"need 1 <= d <= n, got n={n}, d={d}")
    m = comb(n, d)
    if m > MAX_FAMILY_BITS:
        raise OutOfRegimeError(
            f"binom({n},{d}) = {m} > {MAX_FAMILY_BITS}: outside the exhaustive regime; "
            "build ideals with the constructors instead"
        )
    subsets = [sum(1 << v for v in c) for c in combinations(range(n), d)]
    constraints = _exchange_constraints(subsets)
    full_mask = (1 << n) - 1
    total = 1 << m
    step = 1 << _CHUNK_BITS
    # partition the candidate space by its high (prefix) bits
    bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]

    def run(bound):
        return _scan_chunk(
            bound[0], bound[1], subsets, constraints, full_mask,
            require_full_support, require_gcd_one,
        )

    if jobs > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]
    masks = [int(x) for part in parts for x in part]
    return subsets, masks


def enumerate_matroidal(
    n: int,
    d: int,
    require_full_support: bool = True,
    require_gcd_one: bool = True,
    jobs: int = 1,
) -> Iterator[MonomialIdeal]:
    """Every matroidal ideal of degree d in n variables passing the filters.

    Deterministic order: increasing family bitmask over the lexicographically
    ordered d-subsets.
    """
    subsets, masks = matroidal_family_masks(n, d, require_full_support, require_gcd_one, jobs)
    for fam in masks:
        gens = [monomial_from_mask(s, n) for k, s in enumerate(subsets) if (fam >> k) & 1]
        yield minimalize(gens, n)
