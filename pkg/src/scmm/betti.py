"""Multigraded Betti numbers of monomial ideals and the invariants read off them.

β_{i,b}(I) is the rank of H̃_{i-1} of the upper Koszul complex
K^b(I) = {square-free τ ≤ b : x^{b-τ} ∈ I}.  Only multidegrees in the lcm
lattice of the generators can contribute, so those are the only ones visited.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceededError, UnitIdealError, ZeroIdealError
from .homology import Field, SimplicialComplex, parse_field, reduced_homology
from .monomial import (
    Monomial,
    MonomialIdeal,
    contains,
    degree,
    graded_component,
    minimalize,
    mask_of,
    mono_lcm,
    mono_quotient,
    squarefree_component,
)

__all__ = [
    "BettiTable",
    "LCM_BUDGET",
    "LINEAR_QUOTIENTS_BUDGET",
    "lcm_lattice",
    "upper_koszul_complex",
    "betti_table",
    "regularity",
    "projdim",
    "projdim_quotient",
    "has_linear_resolution",
    "colon_is_linear",
    "linear_quotients_order",
    "is_componentwise_linear",
]

LCM_BUDGET = 200_000
LINEAR_QUOTIENTS_BUDGET = 16


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers of an ideal, with the multigraded refinement kept."""

    n: int
    multigraded: tuple[tuple[int, Monomial, int], ...]

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for i, b, r in self.multigraded:
            key = (i, sum(b))
            out[key] = out.get(key, 0) + r
        return dict(sorted(out.items()))

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    @property
    def regularity(self) -> int:
        return max(j - i for (i, j) in self.entries)

    @property
    def projdim(self) -> int:
        return max(i for (i, _) in self.entries)

    def to_json(self) -> dict:
        return {"entries": [[i, j, r] for (i, j), r in self.entries.items()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def render(self) -> str:
        """Aligned table: columns are the homological index i, rows j - i."""
        ent = self.entries
        maxi = self.projdim
        cols = range(maxi + 1)
        width = max(len(str(r)) for r in ent.values()) + 2
        lines = ["       " + "".join(f"{i:>{width}}" for i in cols)]
        totals = [sum(r for (ii, _), r in ent.items() if ii == i) for i in cols]
        lines.append("total: " + "".join(f"{t:>{width}}" for t in totals))
        for s in sorted({j - i for (i, j) in ent}):
            cells = "".join(f"{ent.get((i, i + s), '.'):>{width}}" for i in cols)
            lines.append(f"{s:>5}: " + cells)
        return "\n".join(lines)


def _nonzero(I: MonomialIdeal) -> None:
    if I.is_zero:
        raise ZeroIdealError("operation undefined on the zero ideal")


def _proper(I: MonomialIdeal) -> None:
    _nonzero(I)
    if I.is_unit:
        raise UnitIdealError("operation undefined on the unit ideal")


def lcm_lattice(I: MonomialIdeal, budget: int = LCM_BUDGET) -> list[Monomial]:
    """All lcms of non-empty subsets of G(I)."""
    if I.is_squarefree:
        seen = set(I.masks)
        frontier = list(seen)
        while frontier:
            new = []
            for a in frontier:
                for g in I.masks:
                    c = a | g
                    if c not in seen:
                        seen.add(c)
                        new.append(c)
            if len(seen) > budget:
                raise BudgetExceededError(f"lcm lattice exceeds {budget} elements")
            frontier = new
        n = I.n
        return sorted(tuple((m >> i) & 1 for i in range(n)) for m in seen)
    seen_t = set(I.gens)
    frontier_t = list(seen_t)
    while frontier_t:
        new_t = []
        for a in frontier_t:
            for g in I.gens:
                c = mono_lcm(a, g)
                if c not in seen_t:
                    seen_t.add(c)
                    new_t.append(c)
        if len(seen_t) > budget:
            raise BudgetExceededError(f"lcm lattice exceeds {budget} elements")
        frontier_t = new_t
    return sorted(seen_t)


def upper_koszul_complex(I: MonomialIdeal, b: Monomial) -> SimplicialComplex:
    """K^b(I) as a complex on the support of ``b``."""
    verts = [i for i, e in enumerate(b) if e]
    vmask = 0
    for v in verts:
        vmask |= 1 << v
    if I.is_squarefree and all(e <= 1 for e in b):
        bm = vmask
        facets = [bm & ~g for g in I.masks if g & bm == g]
        return SimplicialComplex.from_faces(verts, facets)
    faces = []
    sub = vmask
    while True:
        tau = tuple(1 if (sub >> i) & 1 else 0 for i in range(I.n))
        if contains(I, mono_quotient(b, tau)):
            faces.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & vmask
    return SimplicialComplex.from_faces(verts, faces)


def betti_table(I: MonomialIdeal, field: Field | str | None = None) -> BettiTable:
    """Multigraded Betti numbers β_{i,b}(I) over ``field`` (default Q)."""
    _nonzero(I)
    return _betti_cached(I, parse_field(field))


@lru_cache(maxsize=100_000)
def _betti_cached(I: MonomialIdeal, F: Field) -> BettiTable:
    out = []
    for b in lcm_lattice(I):
        prof = reduced_homology(upper_koszul_complex(I, b), F)
        for k, r in prof.nonzero().items():
            out.append((k + 1, b, r))
    out.sort(key=lambda t: (t[0], sum(t[1]), t[1]))
    return BettiTable(I.n, tuple(out))


def regularity(I: MonomialIdeal, field: Field | str | None = None) -> int:
    _proper(I)
    return betti_table(I, field).regularity


def projdim(I: MonomialIdeal, field: Field | str | None = None) -> int:
    """Projective dimension of I itself (one less than that of R/I)."""
    _proper(I)
    return betti_table(I, field).projdim


def projdim_quotient(I: MonomialIdeal, field: Field | str | None = None) -> int:
    return projdim(I, field) + 1


def has_linear_resolution(I: MonomialIdeal, field: Field | str | None = None) -> bool:
    _nonzero(I)
    if not I.is_equigenerated:
        return False
    if I.is_unit:
        return True
    return regularity(I, field) == I.degrees[0]


# ------------------------------------------------------------ linear quotients


def colon_is_linear(previous: list[Monomial], u: Monomial, n: int) -> bool:
    """Whether (previous) : u is generated by variables (vacuous when empty)."""
    if not previous:
        return True
    q = minimalize((mono_quotient(v, u) for v in previous), n)
    return all(sum(g) == 1 for g in q.gens)


def _colon_is_linear_masks(previous: list[int], u: int) -> bool:
    """Square-free version of :func:`colon_is_linear` on support masks."""
    quots = [v & ~u for v in previous]
    singles = 0
    for q in quots:
        if q & (q - 1) == 0:
            singles |= q
    return all(q & singles for q in quots)


def _revlex_key(m: Monomial):
    return (sum(m), tuple(reversed(m)))


def _greedy_orders(I: MonomialIdeal):
    gens = list(I.gens)
    # reverse lexicographic first: the classical witness for polymatroidal ideals
    yield sorted(gens, key=_revlex_key, reverse=False)
    yield sorted(gens, key=lambda m: (sum(m), tuple(-e for e in reversed(m))))
    yield gens
    yield sorted(gens, key=lambda m: (sum(m), m))


def _check_order(order: list[Monomial], n: int) -> bool:
    for k in range(1, len(order)):
        if sum(order[k]) < sum(order[k - 1]):
            return False
        if not colon_is_linear(order[:k], order[k], n):
            return False
    return True


def linear_quotients_order(
    I: MonomialIdeal, budget: int = LINEAR_QUOTIENTS_BUDGET
) -> list[Monomial] | None:
    """A degree-non-decreasing order of G(I) with linear quotients, or None.

    Raises :class:`BudgetExceededError` when |G(I)| exceeds ``budget`` and no
    greedy order works, since "none" could then not be certified.
    """
    _nonzero(I)
    n = I.n
    for order in _greedy_orders(I):
        if _check_order(order, n):
            return order
    gens = list(I.gens)
    m = len(gens)
    if m > budget:
        raise BudgetExceededError(
            f"{m} generators exceed the linear-quotients search budget of {budget}"
        )
    full = (1 << m) - 1
    degs = [sum(g) for g in gens]
    if I.is_squarefree:
        masks = [mask_of(g) for g in gens]

        def linear(prev_idx, i):
            return _colon_is_linear_masks([masks[j] for j in prev_idx], masks[i])
    else:

        def linear(prev_idx, i):
            return colon_is_linear([gens[j] for j in prev_idx], gens[i], n)

    dead: set[int] = set()
    # the colon at each step depends only on the set already placed, so
    # failed sets are memoized regardless of the order that reached them
    path: list[int] = []

    def search(used: int) -> bool:
        if used == full:
            return True
        if used in dead:
            return False
        prev = [j for j in range(m) if (used >> j) & 1]
        free = [i for i in range(m) if not (used >> i) & 1]
        # degrees never decrease, so only the lowest remaining degree may go next
        low = min(degs[i] for i in free)
        for i in free:
            if degs[i] == low and linear(prev, i):
                path.append(i)
                if search(used | (1 << i)):
                    return True
                path.pop()
        dead.add(used)
        return False

    if search(0):
        return [gens[i] for i in path]
    return None


# ------------------------------------------------------- componentwise linearity


def is_componentwise_linear(I: MonomialIdeal, field: Field | str | None = None) -> bool:
    _proper(I)
    if I.is_squarefree:
        for i in range(1, I.n + 1):
            comp = squarefree_component(I, i)
            if not comp.is_zero and not has_linear_resolution(comp, field):
                return False
        return True
    lo, hi = min(I.degrees), degree(I)
    for i in range(lo, hi + 1):
        if not has_linear_resolution(graded_component(I, i), field):
            return False
    # components beyond the top generator degree are settled by reg(I) = hi
    return regularity(I, field) == hi
