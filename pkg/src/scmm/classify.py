"""Structural SCM classification of matroidal ideals.

Each classifier decides the sequentially Cohen-Macaulay property from the
shape of the generating set alone (no homology), and returns a witness that
reassembles to the input.  Cases the structural results do not cover fall
back to the homological oracle and say so in ``rule``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Union

from .errors import InconsistencyError, NotMatroidalError, ZeroIdealError
from .homology import Field
from .matroid import is_matroidal
from .monomial import (
    Monomial,
    MonomialIdeal,
    PrimeRef,
    colon,
    gcd_ideal,
    ideal_intersection,
    ideal_sum,
    ideal_to_json,
    is_subideal,
    minimalize,
    monomial_from_mask,
    monomial_scale,
    one,
    prime_ideal,
    render_monomial,
    support,
)

__all__ = [
    "L3Witness",
    "T1Witness",
    "Witness",
    "ClassificationResult",
    "is_squarefree_veronese",
    "is_almost_squarefree_veronese",
    "strip_gcd",
    "decompose_L3",
    "l3_presentations",
    "classify_degree2",
    "classify_scm",
]


def _mask(vars) -> int:
    m = 0
    for v in vars:
        m |= 1 << v
    return m


def _prod(vars, n: int) -> Monomial:
    return monomial_from_mask(_mask(vars), n)


def _check_equigenerated(I: MonomialIdeal) -> None:
    if I.is_zero:
        raise ZeroIdealError("Veronese predicates need a nonzero ideal")
    if not I.is_equigenerated:
        raise ValueError(f"mixed generator degrees {sorted(set(I.degrees))}")


def _missing_count(I: MonomialIdeal) -> int:
    d = I.degrees[0]
    return comb(len(support(I)), d) - len(I.gens)


def is_squarefree_veronese(I: MonomialIdeal) -> bool:
    """G(I) is every square-free d-subset of supp(I)."""
    _check_equigenerated(I)
    return I.is_squarefree and _missing_count(I) == 0


def is_almost_squarefree_veronese(I: MonomialIdeal) -> bool:
    """G(I) misses at most one square-free d-subset of supp(I)."""
    _check_equigenerated(I)
    return I.is_squarefree and _missing_count(I) <= 1


def strip_gcd(I: MonomialIdeal) -> tuple[Monomial, MonomialIdeal]:
    """Split I = g * I' with gcd(I') = 1."""
    g = gcd_ideal(I)
    if not any(g):
        return g, I
    return g, colon(I, g)


def _gcd_var(I: MonomialIdeal) -> int | None:
    """The variable index when gcd(I) is a single variable, else None."""
    if I.is_zero:
        return None
    g = gcd_ideal(I)
    if sum(g) != 1:
        return None
    return g.index(1)


# ------------------------------------------------------------------ witnesses


@dataclass(frozen=True)
class L3Witness:
    """J = Y·p + Σ_i (Y minus y_{d-i})·J_i + J_d for ordered Y = (y_1..y_{d-1}).

    ``perm`` lists the variables as y_1, y_2, ... (0-based); ``subideals`` is
    (J_1, ..., J_{d-1}, J_d).  J_d collects every generator meeting Y in fewer
    than d-2 variables.
    """

    n: int
    d: int
    perm: tuple[int, ...]
    p: PrimeRef
    subideals: tuple[MonomialIdeal, ...]
    gcds: tuple[Monomial, ...]

    @property
    def ys(self) -> tuple[int, ...]:
        return self.perm[: self.d - 1]

    def attached(self, i: int) -> tuple[int, ...]:
        """Variables multiplying J_i (1 <= i <= d-1): Y without y_{d-i}."""
        ys = self.ys
        omit = ys[self.d - 1 - i]
        return tuple(y for y in ys if y != omit)

    def reassemble(self) -> MonomialIdeal:
        n = self.n
        out = monomial_scale(_prod(self.ys, n), self.p.ideal(n))
        for i in range(1, self.d):
            out = ideal_sum(out, monomial_scale(_prod(self.attached(i), n), self.subideals[i - 1]))
        return ideal_sum(out, self.subideals[-1])

    def to_json(self) -> dict:
        return {
            "kind": "L3",
            "perm": [v + 1 for v in self.perm],
            "p": [v + 1 for v in self.p.vars],
            "subideals": [ideal_to_json(J) for J in self.subideals],
            "gcds": [render_monomial(g) for g in self.gcds],
        }


@dataclass(frozen=True)
class T1Witness:
    """J = y1·p + J' with p generated by every other support variable.

    Case "a": J' has gcd 1 and its own witness in ``sub``.  Case "b":
    J' = y2·q with q generated by the support minus {y1, y2}.
    """

    n: int
    y1: int
    p: PrimeRef
    rest: MonomialIdeal
    case: str
    y2: int | None = None
    q: PrimeRef | None = None
    sub: "T1Witness | None" = None

    def reassemble(self) -> MonomialIdeal:
        return ideal_sum(
            monomial_scale(_prod([self.y1], self.n), self.p.ideal(self.n)), self.rest
        )

    def trace(self) -> list[str]:
        if self.case == "b":
            return [f"y1=x{self.y1 + 1} (b: y2=x{self.y2 + 1})"]
        return [f"y1=x{self.y1 + 1} (a)"] + (self.sub.trace() if self.sub else [])

    def to_json(self) -> dict:
        out = {
            "kind": "T1",
            "case": self.case,
            "y1": self.y1 + 1,
            "p": [v + 1 for v in self.p.vars],
            "rest": ideal_to_json(self.rest),
        }
        if self.case == "b":
            out["y2"] = self.y2 + 1
            out["q"] = [v + 1 for v in self.q.vars]
        elif self.sub is not None:
            out["sub"] = self.sub.to_json()
        return out


Structure = Union[L3Witness, T1Witness]


@dataclass(frozen=True)
class Witness:
    """I = gcd · core, with ``structure`` (when present) reassembling the core."""

    gcd: Monomial
    core: MonomialIdeal
    structure: Structure | None = None

    def reassemble(self) -> MonomialIdeal:
        body = self.structure.reassemble() if self.structure is not None else self.core
        return monomial_scale(self.gcd, body)

    def to_json(self) -> dict:
        return {
            "gcd": render_monomial(self.gcd),
            "core": ideal_to_json(self.core),
            "structure": None if self.structure is None else self.structure.to_json(),
        }


@dataclass(frozen=True)
class ClassificationResult:
    scm: bool
    rule: str
    witness: Witness | None = None

    @property
    def structural(self) -> bool:
        return self.rule != "oracle"

    @property
    def verdict(self) -> str:
        if not self.structural:
            return "fallback-oracle"
        return "SCM" if self.scm else "not-SCM"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "scm": self.scm,
            "rule": self.rule,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


# ---------------------------------------------------------------- Lemma L3


def _l3_split(J: MonomialIdeal, d: int, ys: tuple[int, ...], rest_vars: tuple[int, ...]) -> L3Witness:
    n = J.n
    ymask = _mask(ys)
    pieces: list[list[Monomial]] = [[] for _ in range(d - 1)]
    remainder: list[Monomial] = []
    omit_index = {ys[d - 1 - i]: i for i in range(1, d)}
    for g, m in zip(J.gens, J.masks):
        inside = m & ymask
        k = bin(inside).count("1")
        if k == d - 1:
            continue
        if k == d - 2:
            missing = ymask & ~inside
            i = omit_index[missing.bit_length() - 1]
            pieces[i - 1].append(monomial_from_mask(m & ~ymask, n))
        else:
            remainder.append(g)
    subs = tuple(minimalize(p, n) for p in pieces) + (minimalize(remainder, n),)
    gcds = tuple(gcd_ideal(S) if not S.is_zero else one(n) for S in subs)
    perm = ys + rest_vars + tuple(v for v in range(n) if v not in ys and v not in rest_vars)
    return L3Witness(n, d, perm, PrimeRef(rest_vars), subs, gcds)


def l3_presentations(J: MonomialIdeal, d: int) -> Iterator[L3Witness]:
    """Every Y (lexicographic order) with J : prod(Y) the prime on supp(J) minus Y."""
    V = tuple(sorted(support(J)))
    n = J.n
    if d < 2 or len(V) < d:
        return
    for ys in combinations(V, d - 1):
        rest = tuple(v for v in V if v not in ys)
        if colon(J, _prod(ys, n)) == prime_ideal(rest, n):
            yield _l3_split(J, d, ys, rest)


def decompose_L3(J: MonomialIdeal, d: int) -> L3Witness | None:
    """Lexicographically least L3 presentation of a matroidal J of degree d, or None."""
    if J.is_zero or not is_matroidal(J):
        raise NotMatroidalError("decompose_L3 expects a matroidal ideal")
    if J.degrees[0] != d:
        raise ValueError(f"ideal has degree {J.degrees[0]}, not {d}")
    return next(l3_presentations(J, d), None)


def _pieces_valid(W: L3Witness, field) -> bool:
    """J_1..J_{d-1} nonzero, fully supported on the complement of Y, SCM matroidal."""
    target = frozenset(W.p.vars)
    for S in W.subideals[:-1]:
        if S.is_zero or support(S) != target or not is_matroidal(S):
            return False
        if not classify_scm(S, field).scm:
            return False
    return True


def _is_gcd_var_times_prime(S: MonomialIdeal, vars: tuple[int, ...]) -> int | None:
    """a if S = x_a·(remaining vars), else None."""
    a = _gcd_var(S)
    if a is None:
        return None
    rest = [v for v in vars if v != a]
    if not rest:
        return None
    expect = monomial_scale(_prod([a], S.n), prime_ideal(rest, S.n))
    return a if S == expect else None


def _l5_shape(W: L3Witness) -> bool:
    J1, J2 = W.subideals[0], W.subideals[1]
    a = _is_gcd_var_times_prime(J1, W.p.vars)
    b = _is_gcd_var_times_prime(J2, W.p.vars)
    return a is not None and b is not None and a != b


def _l6_shape(W: L3Witness) -> bool:
    J1, J2, J3 = W.subideals
    if not J3.is_zero:
        return False
    for A, B in ((J1, J2), (J2, J1)):
        if _is_gcd_var_times_prime(A, W.p.vars) is not None and not B.is_zero:
            if not any(gcd_ideal(B)):
                return True
    return False


def _negative_rule(presentations: list[L3Witness], n: int, d: int, label: str):
    if not presentations:
        return "L3", None
    if d == 3:
        for W in presentations:
            if _l5_shape(W):
                return "L5", W
        if n >= 6:
            for W in presentations:
                if _l6_shape(W):
                    return "L6", W
    return label, presentations[0]


# ------------------------------------------------------------------ Theorem T1


def _t1_search(J: MonomialIdeal, V: tuple[int, ...]) -> T1Witness | None:
    n = J.n
    for y1 in V:
        others = tuple(v for v in V if v != y1)
        if len(others) < 2:
            continue
        if colon(J, _prod([y1], n)) != prime_ideal(others, n):
            continue
        bit = 1 << y1
        rest = minimalize((g for g, m in zip(J.gens, J.masks) if not m & bit), n)
        if rest.is_zero or support(rest) != frozenset(others):
            continue
        g = gcd_ideal(rest)
        if not any(g):
            if not is_matroidal(rest):
                continue
            sub = _t1_search(rest, others)
            if sub is not None:
                return T1Witness(n, y1, PrimeRef(others), rest, "a", sub=sub)
            continue
        for y2 in (v for v in others if g[v]):
            q = tuple(v for v in others if v != y2)
            if rest == monomial_scale(_prod([y2], n), prime_ideal(q, n)):
                return T1Witness(n, y1, PrimeRef(others), rest, "b", y2=y2, q=PrimeRef(q))
    return None


def classify_degree2(J: MonomialIdeal) -> ClassificationResult:
    """SCM test for a matroidal gcd-1 ideal of degree 2 by the y1·p + J' recursion."""
    if J.is_zero or not is_matroidal(J):
        raise NotMatroidalError("classify_degree2 expects a matroidal ideal")
    if J.degrees[0] != 2:
        raise ValueError(f"classify_degree2 needs degree 2, got {J.degrees[0]}")
    if any(gcd_ideal(J)):
        raise ValueError("classify_degree2 expects gcd(J) = 1; strip the gcd first")
    V = tuple(sorted(support(J)))
    W = _t1_search(J, V)
    if W is None:
        return ClassificationResult(False, "T1", Witness(one(J.n), J))
    return ClassificationResult(True, "T1" + W.case, Witness(one(J.n), J, W))


# ---------------------------------------------- Propositions P3, P4/P5 and T2


def _classify_p3(J: MonomialIdeal, field) -> tuple[bool, str, L3Witness | None]:
    pres = list(l3_presentations(J, 3))
    for W in pres:
        if not _pieces_valid(W, field):
            continue
        J1, J2, J3 = W.subideals
        if not is_subideal(J3, ideal_intersection(J1, J2)):
            continue
        g1, g2 = gcd_ideal(J1), gcd_ideal(J2)
        if not any(g1) and not any(g2):
            return True, "P3a", W
        a, b = _gcd_var(J1), _gcd_var(J2)
        if a is not None and a == b:
            if not J3.is_zero:
                raise InconsistencyError(
                    "P3: gcd(J1) = gcd(J2) = one variable with J3 != 0 contradicts the exchange condition"
                )
            return True, "P3b", W
    rule, W = _negative_rule(pres, 5, 3, "P3")
    return False, rule, W


def _classify_p5(J: MonomialIdeal, n: int, field) -> tuple[bool, str, L3Witness | None]:
    d = n - 2
    label = "P4" if n == 6 else "P5"
    pres = list(l3_presentations(J, d))
    full = comb(n - 3, 2)
    for W in pres:
        if not _pieces_valid(W, field):
            continue
        pieces, last = W.subideals[:-1], W.subideals[-1]
        if all(not any(gcd_ideal(S)) for S in pieces):
            size = len(last.gens)
            if size == full:
                return True, label + "a", W
            if size == full - 1:
                return True, label + "b", W
            if size == 0:
                return True, label + "c", W
            continue
        vs = {_gcd_var(S) for S in pieces}
        if len(vs) == 1 and None not in vs and last.is_zero:
            return True, label + "d", W
    rule, W = _negative_rule(pres, n, d, label)
    return False, rule, W


def _classify_t2(J: MonomialIdeal, field) -> tuple[bool, str, L3Witness | None]:
    pres = list(l3_presentations(J, 3))
    for W in pres:
        if not _pieces_valid(W, field):
            continue
        J1, J2, J3 = W.subideals
        v1, v2 = is_squarefree_veronese(J1), is_squarefree_veronese(J2)
        a1, a2 = is_almost_squarefree_veronese(J1), is_almost_squarefree_veronese(J2)
        k = len(J3.gens)
        if k == 4:
            if a1 and a2 and not v1 and not v2 and J1 == J2:
                raise InconsistencyError(
                    "T2(a): J1 = J2 both proper almost square-free Veronese with |G(J3)| = 4 "
                    "contradicts the exchange condition"
                )
            if (v1 and a2) or (a1 and v2):
                return True, "T2a", W
        elif k == 3:
            if v1 and v2:
                return True, "T2b", W
        elif k == 0:
            if J1 == J2 and a1:
                return True, "T2c", W
            g1, g2 = _gcd_var(J1), _gcd_var(J2)
            if g1 is not None and g1 == g2:
                return True, "T2c", W
    rule, W = _negative_rule(pres, 6, 3, "T2")
    return False, rule, W


# ------------------------------------------------------------------ dispatcher


def classify_scm(J: MonomialIdeal, field: Field | str | None = None) -> ClassificationResult:
    """Decide SCM for a matroidal ideal from its structure (oracle only off-theorem)."""
    if J.is_zero or not is_matroidal(J):
        raise NotMatroidalError(f"{J} is not matroidal")
    g, core = strip_gcd(J)
    if core.is_unit:
        return ClassificationResult(True, "R1", Witness(g, core))
    n = len(support(core))
    d = core.degrees[0]
    if d in (1, n - 1, n):
        return ClassificationResult(True, "R1", Witness(g, core))
    if n <= 3:
        return ClassificationResult(True, "L1", Witness(g, core))
    if n == 4:
        if is_squarefree_veronese(core):
            return ClassificationResult(True, "P2a", Witness(g, core))
        if is_almost_squarefree_veronese(core):
            return ClassificationResult(True, "P2b", Witness(g, core))
        return ClassificationResult(False, "P2", Witness(g, core))
    if d == 2:
        res = classify_degree2(core)
        return ClassificationResult(res.scm, res.rule, Witness(g, core, res.witness.structure))
    if d == n - 2 and n >= 6:
        scm, rule, W = _classify_p5(core, n, field)
    elif (n, d) == (5, 3):
        scm, rule, W = _classify_p3(core, field)
    elif (n, d) == (6, 3):
        scm, rule, W = _classify_t2(core, field)
    else:
        from .duality import is_scm

        return ClassificationResult(is_scm(J, field), "oracle", None)
    return ClassificationResult(scm, rule, Witness(g, core, W))
