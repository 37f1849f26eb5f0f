"""Exact monomial and monomial-ideal arithmetic.

A monomial is a plain tuple of non-negative exponents, one per variable.
Ideals are immutable and always stored by their minimal generating set in
graded lexicographic order, so equal ideals compare (and serialize) equal.
Variables are 0-based internally and rendered 1-based (``x1`` .. ``xn``).
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, NotSquareFreeError, ParseError, ZeroIdealError

Monomial = tuple[int, ...]

__all__ = [
    "Monomial",
    "MonomialIdeal",
    "PrimeRef",
    "InfeasibleCapsWarning",
    "one",
    "variable",
    "monomial_from_mask",
    "mask_of",
    "mono_degree",
    "mono_support",
    "is_squarefree",
    "divides",
    "mono_lcm",
    "mono_gcd",
    "mono_mul",
    "mono_quotient",
    "minimalize",
    "zero_ideal",
    "unit_ideal",
    "ideal_sum",
    "ideal_intersection",
    "monomial_scale",
    "colon",
    "support",
    "gcd_ideal",
    "degree",
    "contains",
    "is_subideal",
    "require_squarefree",
    "squarefree_component",
    "graded_component",
    "veronese_type",
    "squarefree_veronese",
    "prime_ideal",
    "permute",
    "parse_monomial",
    "parse_ideal",
    "render_monomial",
    "render_ideal",
    "ideal_to_json",
    "ideal_from_json",
    "load_ideal",
]


class InfeasibleCapsWarning(UserWarning):
    """Veronese-type caps admit no monomial of the requested degree."""


# ---------------------------------------------------------------- monomials


def one(n: int) -> Monomial:
    return (0,) * n


def variable(i: int, n: int) -> Monomial:
    e = [0] * n
    e[i] = 1
    return tuple(e)


def monomial_from_mask(mask: int, n: int) -> Monomial:
    return tuple((mask >> i) & 1 for i in range(n))


def mask_of(m: Monomial) -> int:
    """Support of ``m`` as a bitmask (bit i set iff x_{i+1} divides m)."""
    out = 0
    for i, e in enumerate(m):
        if e:
            out |= 1 << i
    return out


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_support(m: Monomial) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e)


def is_squarefree(m: Monomial) -> bool:
    return all(e <= 1 for e in m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_quotient(a: Monomial, b: Monomial) -> Monomial:
    """``a / gcd(a, b)``."""
    return tuple(x - y if x > y else 0 for x, y in zip(a, b))


def _grlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in m))


# ------------------------------------------------------------------- ideals


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal of K[x_1..x_n] given by its minimal generators.

    Build instances with :func:`minimalize` (or the helpers in this module);
    the raw constructor trusts that ``gens`` is already canonical.
    """

    n: int
    gens: tuple[Monomial, ...] = field(default=())

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    @cached_property
    def is_squarefree(self) -> bool:
        return all(is_squarefree(g) for g in self.gens)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Generator supports as bitmasks; only meaningful when square-free."""
        return tuple(mask_of(g) for g in self.gens)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(g) for g in self.gens)

    @property
    def is_equigenerated(self) -> bool:
        return len(set(self.degrees)) <= 1

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __str__(self) -> str:
        return render_ideal(self)


@dataclass(frozen=True, order=True)
class PrimeRef:
    """A monomial prime ideal, named by its (0-based) variable indices."""

    vars: tuple[int, ...]

    def __post_init__(self):
        if not self.vars:
            raise ValueError("a monomial prime needs at least one variable")
        object.__setattr__(self, "vars", tuple(sorted(set(self.vars))))

    @property
    def height(self) -> int:
        return len(self.vars)

    def ideal(self, n: int) -> MonomialIdeal:
        return prime_ideal(self.vars, n)

    def __str__(self) -> str:
        return "(" + ", ".join(f"x{i + 1}" for i in self.vars) + ")"


def _check_lengths(monos: Iterable[Monomial], n: int) -> list[Monomial]:
    out = []
    for m in monos:
        m = tuple(int(e) for e in m)
        if len(m) != n:
            raise AmbientMismatchError(f"monomial {m} does not have {n} exponents")
        if any(e < 0 for e in m):
            raise ValueError(f"negative exponent in {m}")
        out.append(m)
    return out


def minimalize(monomials: Iterable[Monomial], n: int) -> MonomialIdeal:
    """The ideal generated by ``monomials``, with canonical minimal generators."""
    monos = sorted(set(_check_lengths(monomials, n)), key=_grlex_key)
    kept: list[Monomial] = []
    for m in monos:
        if not any(divides(k, m) for k in kept):
            kept.append(m)
    return MonomialIdeal(n, tuple(kept))


def zero_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ())


def unit_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, (one(n),))


def _same_ring(*ideals: MonomialIdeal) -> int:
    ns = {I.n for I in ideals}
    if len(ns) != 1:
        raise AmbientMismatchError(f"ambient variable counts differ: {sorted(ns)}")
    return ns.pop()


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    n = _same_ring(I, J)
    return minimalize(I.gens + J.gens, n)


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    n = _same_ring(I, J)
    return minimalize((mono_lcm(u, v) for u in I.gens for v in J.gens), n)


def monomial_scale(m: Monomial, I: MonomialIdeal) -> MonomialIdeal:
    if len(m) != I.n:
        raise AmbientMismatchError(f"monomial {m} does not live in {I.n} variables")
    # multiplying by a monomial preserves minimality and the grlex order
    return MonomialIdeal(I.n, tuple(mono_mul(m, g) for g in I.gens))


def colon(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    if len(m) != I.n:
        raise AmbientMismatchError(f"monomial {m} does not live in {I.n} variables")
    return minimalize((mono_quotient(u, m) for u in I.gens), I.n)


def support(I: MonomialIdeal) -> frozenset[int]:
    out: set[int] = set()
    for g in I.gens:
        out.update(i for i, e in enumerate(g) if e)
    return frozenset(out)


def gcd_ideal(I: MonomialIdeal) -> Monomial:
    if I.is_zero:
        raise ZeroIdealError("gcd of the zero ideal is undefined")
    g = I.gens[0]
    for u in I.gens[1:]:
        g = mono_gcd(g, u)
    return g


def degree(I: MonomialIdeal) -> int:
    if I.is_zero:
        raise ZeroIdealError("degree of the zero ideal is undefined")
    return max(I.degrees)


def contains(I: MonomialIdeal, m: Monomial) -> bool:
    return any(divides(g, m) for g in I.gens)


def is_subideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True iff I is contained in J."""
    _same_ring(I, J)
    return all(contains(J, u) for u in I.gens)


def require_squarefree(I: MonomialIdeal) -> None:
    for g in I.gens:
        if not is_squarefree(g):
            raise NotSquareFreeError(
                f"generator {render_monomial(g)} is not square-free", generator=g
            )


def squarefree_component(I: MonomialIdeal, i: int) -> MonomialIdeal:
    """Ideal generated by the square-free degree-``i`` monomials of I."""
    if i < 0:
        raise ValueError("component degree must be non-negative")
    require_squarefree(I)
    n = I.n
    masks = I.masks
    gens = []
    for combo in combinations(range(n), i):
        s = 0
        for v in combo:
            s |= 1 << v
        if any(g & s == g for g in masks):
            gens.append(monomial_from_mask(s, n))
    return minimalize(gens, n)


def _monomials_of_degree(n: int, d: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    for e in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - e):
            yield (e,) + rest


def graded_component(I: MonomialIdeal, i: int) -> MonomialIdeal:
    """Ideal generated by all degree-``i`` elements of I."""
    if i < 0:
        raise ValueError("component degree must be non-negative")
    out = set()
    for g in I.gens:
        dg = sum(g)
        if dg <= i:
            for t in _monomials_of_degree(I.n, i - dg):
                out.add(mono_mul(g, t))
    return minimalize(out, I.n)


def veronese_type(n: int, d: int, caps: Sequence[int]) -> MonomialIdeal:
    """All degree-``d`` monomials whose j-th exponent is at most ``caps[j]``."""
    if len(caps) != n:
        raise AmbientMismatchError(f"expected {n} caps, got {len(caps)}")
    if d < 0 or any(not 1 <= a <= max(d, 1) for a in caps):
        raise ValueError(f"caps must satisfy 1 <= a_j <= d (d={d}, caps={tuple(caps)})")
    if sum(caps) < d:
        warnings.warn(
            f"caps {tuple(caps)} admit no monomial of degree {d}",
            InfeasibleCapsWarning,
            stacklevel=2,
        )
        return zero_ideal(n)
    gens = [m for m in _monomials_of_degree(n, d) if all(e <= a for e, a in zip(m, caps))]
    return minimalize(gens, n)


def squarefree_veronese(n: int, d: int) -> MonomialIdeal:
    if not 0 <= d <= n:
        raise ValueError(f"square-free Veronese needs 0 <= d <= n, got n={n}, d={d}")
    gens = []
    for combo in combinations(range(n), d):
        gens.append(tuple(1 if i in combo else 0 for i in range(n)))
    return minimalize(gens, n)


def prime_ideal(vars: Iterable[int], n: int) -> MonomialIdeal:
    return minimalize((variable(i, n) for i in vars), n)


def permute(I: MonomialIdeal, perm: Sequence[int]) -> MonomialIdeal:
    """Relabel variables: x_i is sent to x_{perm[i]} (0-based)."""
    if sorted(perm) != list(range(I.n)):
        raise ValueError(f"{perm} is not a permutation of range({I.n})")
    out = []
    for g in I.gens:
        e = [0] * I.n
        for i, a in enumerate(g):
            e[perm[i]] = a
        out.append(tuple(e))
    return minimalize(out, I.n)


# ---------------------------------------------------------------- text / json

_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")
_TERM = re.compile(r"x\d+(?:\^\d+)?(?:\*?x\d+(?:\^\d+)?)*")


def _parse_term(term: str) -> dict[int, int]:
    if term == "1":
        return {}
    if not _TERM.fullmatch(term):
        raise ParseError(f"cannot parse monomial {term!r}")
    exps: dict[int, int] = {}
    for idx, power in _FACTOR.findall(term):
        i = int(idx)
        if i < 1:
            raise ParseError(f"variable indices start at 1: {term!r}")
        exps[i - 1] = exps.get(i - 1, 0) + (int(power) if power else 1)
    return exps


def parse_monomial(text: str, n: int) -> Monomial:
    exps = _parse_term(text.replace(" ", ""))
    if exps and max(exps) >= n:
        raise ParseError(f"{text!r} uses a variable beyond x{n}")
    return tuple(exps.get(i, 0) for i in range(n))


def parse_ideal(text: str, n: int | None = None) -> MonomialIdeal:
    """Parse ``"x1*x3, x2*x4"`` (or ``"x1x3, x2x4"``); ``n`` defaults to the largest index used."""
    body = text.strip().replace(" ", "")
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if body in ("", "0"):
        if n is None:
            raise ParseError("cannot infer the variable count of the zero ideal; pass n")
        return zero_ideal(n)
    terms = [_parse_term(t) for t in body.split(",") if t]
    used = max((max(t) + 1 for t in terms if t), default=0)
    if n is None:
        n = used
    elif used > n:
        raise ParseError(f"ideal uses x{used} but n={n}")
    return minimalize((tuple(t.get(i, 0) for i in range(n)) for t in terms), n)


def render_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def render_ideal(I: MonomialIdeal) -> str:
    if I.is_zero:
        return "0"
    return ", ".join(render_monomial(g) for g in I.gens)


def ideal_to_json(I: MonomialIdeal) -> dict:
    return {"n": I.n, "gens": [list(g) for g in I.gens]}


def ideal_from_json(data: dict | str) -> MonomialIdeal:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    try:
        n = data["n"]
        gens = data["gens"]
    except (KeyError, TypeError) as exc:
        raise ParseError("ideal JSON needs keys 'n' and 'gens'") from exc
    if not isinstance(n, int) or n < 0:
        raise ParseError(f"'n' must be a non-negative integer, got {n!r}")
    for g in gens:
        if not isinstance(g, list) or not all(isinstance(e, int) and e >= 0 for e in g):
            raise ParseError(f"bad exponent vector {g!r}")
    try:
        return minimalize((tuple(g) for g in gens), n)
    except AmbientMismatchError as exc:
        raise ParseError(str(exc)) from exc


def load_ideal(text: str, n: int | None = None) -> MonomialIdeal:
    """Accept either the JSON or the text format."""
    stripped = text.strip()
    if stripped.startswith("{"):
        I = ideal_from_json(stripped)
        if n is not None and n != I.n:
            raise ParseError(f"JSON ideal has n={I.n}, expected {n}")
        return I
    return parse_ideal(stripped, n)
