"""Alexander duality and the homological decision suite for square-free ideals.

The SCM test is the dual criterion: R/I is sequentially Cohen-Macaulay iff
the Alexander dual of I is componentwise linear.  Cohen-Macaulayness is
decided by comparing projective dimension with height.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from functools import lru_cache

from .betti import (
    betti_table,
    has_linear_resolution,
    is_componentwise_linear,
    regularity,
)
from .errors import InconsistencyError, UnitIdealError, ZeroIdealError
from .homology import Field, parse_field
from .monomial import (
    Monomial,
    MonomialIdeal,
    PrimeRef,
    gcd_ideal,
    minimalize,
    monomial_from_mask,
    render_ideal,
    render_monomial,
    require_squarefree,
    support,
)

__all__ = [
    "InvariantReport",
    "TSV_COLUMNS",
    "require_squarefree",
    "alexander_dual",
    "associated_primes",
    "invariant_report",
    "is_scm",
    "is_cm",
]

TSV_COLUMNS = (
    "n", "d", "gens", "matroidal", "gcd", "height", "bight",
    "projdim", "depth", "reg", "cm", "scm",
)


def _check_input(I: MonomialIdeal) -> None:
    require_squarefree(I)
    if I.is_zero:
        raise ZeroIdealError("the zero ideal has no Alexander dual here")
    if I.is_unit:
        raise UnitIdealError("the unit ideal has no Alexander dual here")


def _minimal_masks(masks) -> list[int]:
    ms = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    kept: list[int] = []
    for m in ms:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def alexander_dual(I: MonomialIdeal) -> MonomialIdeal:
    """Intersection of the primes (x_i : x_i | u) over u in G(I)."""
    _check_input(I)
    return _dual_cached(I)


@lru_cache(maxsize=200_000)
def _dual_cached(I: MonomialIdeal) -> MonomialIdeal:
    covers = [0]
    for g in I.masks:
        nxt = []
        for c in covers:
            if c & g:
                nxt.append(c)
            else:
                bit = 1
                while bit <= g:
                    if g & bit:
                        nxt.append(c | bit)
                    bit <<= 1
        covers = _minimal_masks(nxt)
    return minimalize((monomial_from_mask(c, I.n) for c in covers), I.n)


def associated_primes(I: MonomialIdeal) -> list[PrimeRef]:
    """Minimal primes of I (all of Ass(R/I), since I is radical), sorted."""
    dual = alexander_dual(I)
    return sorted(
        (PrimeRef(tuple(i for i, e in enumerate(g) if e)) for g in dual.gens),
        key=lambda p: (p.height, p.vars),
    )


@dataclass(frozen=True)
class InvariantReport:
    n: int
    degree: int
    gens: str
    matroidal: bool
    gcd: Monomial
    support: tuple[int, ...]
    ass_primes: tuple[PrimeRef, ...]
    height: int
    bight: int
    projdim_quotient: int
    depth_quotient: int
    regularity: int
    is_cm: bool
    is_scm: bool

    def to_json(self) -> dict:
        d = asdict(self)
        d["gcd"] = render_monomial(self.gcd)
        d["support"] = [i + 1 for i in self.support]
        d["ass_primes"] = [str(p) for p in self.ass_primes]
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def tsv_row(self) -> list[str]:
        return [
            str(self.n),
            str(self.degree),
            self.gens,
            _flag(self.matroidal),
            render_monomial(self.gcd),
            str(self.height),
            str(self.bight),
            str(self.projdim_quotient),
            str(self.depth_quotient),
            str(self.regularity),
            _flag(self.is_cm),
            _flag(self.is_scm),
        ]

    def render(self) -> str:
        lines = [
            f"ideal:      {self.gens}",
            f"n:          {self.n}",
            f"degree:     {self.degree}",
            f"matroidal:  {_flag(self.matroidal)}",
            f"gcd:        {render_monomial(self.gcd)}",
            f"support:    {{{', '.join(f'x{i + 1}' for i in self.support)}}}",
            f"Ass(R/I):   {', '.join(str(p) for p in self.ass_primes)}",
            f"height:     {self.height}",
            f"bight:      {self.bight}",
            f"projdim:    {self.projdim_quotient}",
            f"depth:      {self.depth_quotient}",
            f"reg:        {self.regularity}",
            f"cm:         {_flag(self.is_cm)}",
            f"scm:        {_flag(self.is_scm)}",
        ]
        return "\n".join(lines)


def _flag(b: bool) -> str:
    return "true" if b else "false"


def invariant_report(I: MonomialIdeal, field: Field | str | None = None) -> InvariantReport:
    _check_input(I)
    return _report_cached(I, parse_field(field))


@lru_cache(maxsize=100_000)
def _report_cached(I: MonomialIdeal, F: Field) -> InvariantReport:
    from .matroid import is_matroidal

    dual = alexander_dual(I)
    primes = associated_primes(I)
    heights = [p.height for p in primes]
    # dual generated in degree 1 would be a prime; the dual of a proper
    # square-free ideal is proper, so its regularity is defined
    pd = regularity(dual, F)
    pd_direct = betti_table(I, F).projdim + 1
    if pd != pd_direct:
        raise InconsistencyError(
            f"projdim(R/I) from the dual ({pd}) and from betti_table ({pd_direct}) differ "
            f"for {render_ideal(I)}"
        )
    height = min(heights)
    return InvariantReport(
        n=I.n,
        degree=max(I.degrees),
        gens=render_ideal(I),
        matroidal=is_matroidal(I),
        gcd=gcd_ideal(I),
        support=tuple(sorted(support(I))),
        ass_primes=tuple(primes),
        height=height,
        bight=max(heights),
        projdim_quotient=pd,
        depth_quotient=I.n - pd,
        regularity=betti_table(I, F).regularity,
        is_cm=pd == height,
        is_scm=is_componentwise_linear(dual, F),
    )


def is_scm(I: MonomialIdeal, field: Field | str | None = None) -> bool:
    return invariant_report(I, field).is_scm


def is_cm(I: MonomialIdeal, field: Field | str | None = None) -> bool:
    return invariant_report(I, field).is_cm


def dual_has_linear_resolution(I: MonomialIdeal, field: Field | str | None = None) -> bool:
    """Eagon-Reiner side of the CM test, computed on the dual."""
    return has_linear_resolution(alexander_dual(I), field)
