"""Census runs and theorem verification: structural classifiers against the oracle."""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, TextIO

from .betti import betti_table, regularity
from .classify import (
    ClassificationResult,
    classify_scm,
    is_almost_squarefree_veronese,
)
from .duality import TSV_COLUMNS, InvariantReport, alexander_dual, invariant_report
from .homology import Field, parse_field
from .matroid import enumerate_matroidal, is_matroidal
from .monomial import MonomialIdeal, minimalize, render_ideal, squarefree_veronese

__all__ = [
    "CENSUS_COLUMNS",
    "CensusRecord",
    "VerifyReport",
    "THEOREM_IDS",
    "census_record",
    "census_records",
    "write_census",
    "verify",
    "random_complete_intersection",
]

CENSUS_COLUMNS = TSV_COLUMNS + ("rule", "verdict", "agree")


@dataclass(frozen=True)
class CensusRecord:
    report: InvariantReport
    result: ClassificationResult | None

    @property
    def ideal(self) -> str:
        return self.report.gens

    @property
    def agreement(self) -> bool:
        if self.result is None or not self.result.structural:
            return True
        return self.result.scm == self.report.is_scm

    def tsv_row(self) -> list[str]:
        if self.result is None:
            tail = ["-", "-", "true"]
        else:
            tail = [self.result.rule, self.result.verdict, "true" if self.agreement else "false"]
        return self.report.tsv_row() + tail


def census_record(I: MonomialIdeal, field: Field | str | None = None) -> CensusRecord:
    F = parse_field(field)
    report = invariant_report(I, F)
    result = classify_scm(I, F) if report.matroidal else None
    return CensusRecord(report, result)


def _record_worker(args):
    I, F = args
    return census_record(I, F)


def _map_records(ideals: list[MonomialIdeal], F: Field, jobs: int) -> list[CensusRecord]:
    if jobs > 1 and len(ideals) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_record_worker, [(I, F) for I in ideals], chunksize=16))
    return [census_record(I, F) for I in ideals]


def default_jobs() -> int:
    return os.cpu_count() or 1


def census_records(
    n: int,
    d: int,
    full_support: bool = True,
    gcd_one: bool = True,
    field: Field | str | None = None,
    jobs: int = 1,
) -> list[CensusRecord]:
    """One record per enumerated matroidal ideal, in enumeration order."""
    F = parse_field(field)
    ideals = list(enumerate_matroidal(n, d, full_support, gcd_one, jobs=jobs))
    return _map_records(ideals, F, jobs)


def write_census(records: Iterable[CensusRecord], out: TextIO) -> None:
    out.write("\t".join(CENSUS_COLUMNS) + "\n")
    for rec in records:
        out.write("\t".join(rec.tsv_row()) + "\n")


# ------------------------------------------------------------------ verification


@dataclass
class VerifyReport:
    theorem: str
    bounds: dict
    total: int = 0
    matroidal: int = 0
    scm: int = 0
    disagreements: list[str] = field(default_factory=list)
    exhibits: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def render(self) -> str:
        b = " ".join(f"{k}={v}" for k, v in self.bounds.items())
        lines = [
            f"theorem:        {self.theorem}",
            f"bounds:         {b}",
            f"total ideals:   {self.total}",
            f"matroidal:      {self.matroidal}",
            f"scm:            {self.scm}",
            f"disagreements:  {len(self.disagreements)}",
            f"wall time:      {self.wall_time:.2f}s",
        ]
        for e in self.exhibits:
            lines.append(f"exhibit:        {e}")
        for dis in self.disagreements:
            lines.append(f"DISAGREE:       {dis}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _classifier_vs_oracle(report: VerifyReport, ideals: Iterable[MonomialIdeal], F: Field, jobs: int):
    ideals = list(ideals)
    for rec in _map_records(ideals, F, jobs):
        report.total += 1
        report.matroidal += rec.report.matroidal
        report.scm += rec.report.is_scm
        if rec.result is None:
            report.disagreements.append(f"{rec.ideal}: not matroidal")
        elif not rec.result.structural:
            report.disagreements.append(f"{rec.ideal}: no structural rule applies")
        elif not rec.agreement:
            report.disagreements.append(
                f"{rec.ideal}: classifier {rec.result.verdict} ({rec.result.rule}) "
                f"vs oracle scm={rec.report.is_scm}"
            )


def _census_ideals(n: int, ds: Iterable[int], full_support=True, gcd_one=True, jobs=1):
    for d in ds:
        yield from enumerate_matroidal(n, d, full_support, gcd_one, jobs=jobs)


def _verify_l1(report, F, jobs, n=None, d=None, **_):
    report.bounds = {"n": 3, "d": "1..3"}
    ideals = list(_census_ideals(3, range(1, 4), False, False))
    _classifier_vs_oracle(report, ideals, F, jobs)
    for I in ideals:
        if not invariant_report(I, F).is_scm:
            report.disagreements.append(f"{render_ideal(I)}: oracle says not SCM")


def almost_veronese_family(n: int, d: int) -> list[MonomialIdeal]:
    """The square-free Veronese ideal and every ideal obtained by dropping one generator."""
    V = squarefree_veronese(n, d)
    out = [V]
    for k in range(len(V.gens)):
        rest = V.gens[:k] + V.gens[k + 1 :]
        if rest:
            out.append(minimalize(rest, n))
    return out


def _verify_l2(report, F, jobs, n=None, d=None, **_):
    top = n or 6
    report.bounds = {"n": f"2..{top}", "d": "1..n-1"}
    ideals = []
    for m in range(2, top + 1):
        for dd in range(1, m):
            ideals.extend(almost_veronese_family(m, dd))
    _classifier_vs_oracle(report, ideals, F, jobs)
    for I in ideals:
        if not is_matroidal(I) or not invariant_report(I, F).is_scm:
            report.disagreements.append(f"{render_ideal(I)}: almost Veronese but not SCM matroidal")


def _fixed_census(n0, d0):
    def run(report, F, jobs, n=None, d=None, **_):
        nn = n or n0
        dd = d or (d0 if d0 is not None else nn - 2)
        report.bounds = {"n": nn, "d": dd}
        _classifier_vs_oracle(report, enumerate_matroidal(nn, dd, jobs=jobs), F, jobs)

    return run


def _verify_p2(report, F, jobs, **_):
    report.bounds = {"n": 4, "d": "1..4"}
    ideals = list(_census_ideals(4, range(1, 5)))
    _classifier_vs_oracle(report, ideals, F, jobs)
    for I in ideals:
        if invariant_report(I, F).is_scm != is_almost_squarefree_veronese(I):
            report.disagreements.append(f"{render_ideal(I)}: SCM != almost square-free Veronese")


def _verify_pn4(report, F, jobs, **_):
    report.bounds = {"n": 4, "d": "1..4", "gcd1": False}
    for I in _census_ideals(4, range(1, 5), True, False):
        r = invariant_report(I, F)
        report.total += 1
        report.matroidal += r.matroidal
        report.scm += r.is_scm
        if r.is_scm != (r.projdim_quotient == r.bight):
            report.disagreements.append(
                f"{r.gens}: scm={r.is_scm} but projdim={r.projdim_quotient}, bight={r.bight}"
            )


def _verify_p0(report, F, jobs, n=None, d=None, **_):
    nn, dd = n or 5, d or 2
    report.bounds = {"n": nn, "d": dd}
    for rec in census_records(nn, dd, field=F, jobs=jobs):
        r = rec.report
        report.total += 1
        report.matroidal += r.matroidal
        report.scm += r.is_scm
        equal = r.projdim_quotient == r.bight
        if r.is_scm and not equal:
            report.disagreements.append(f"{r.gens}: SCM but projdim {r.projdim_quotient} != bight {r.bight}")
        elif equal and not r.is_scm:
            report.exhibits.append(f"{r.gens}: projdim = bight = {r.bight} yet not SCM")


def _verify_t0c(report, F, jobs, n=None, d=None, **_):
    nn, dd = n or 5, d or 2
    report.bounds = {"n": nn, "d": dd}
    for I in enumerate_matroidal(nn, dd, jobs=jobs):
        report.total += 1
        report.matroidal += 1
        pd = betti_table(I, F).projdim + 1
        reg = regularity(alexander_dual(I), F)
        if pd != reg:
            report.disagreements.append(f"{render_ideal(I)}: projdim(R/I)={pd} but reg(dual)={reg}")


def random_complete_intersection(rng: random.Random, max_n: int = 8, max_r: int = 4, max_exp: int = 3):
    """Monomials with pairwise disjoint supports (a regular sequence) and their degrees."""
    n = rng.randint(2, max_n)
    r = rng.randint(1, min(max_r, n))
    vars_ = list(range(n))
    rng.shuffle(vars_)
    cuts = sorted(rng.sample(range(1, n), r - 1)) if r > 1 else []
    blocks = [vars_[a:b] for a, b in zip([0] + cuts, cuts + [n])]
    gens = []
    for block in blocks:
        size = rng.randint(1, len(block))
        e = [0] * n
        for v in block[:size]:
            e[v] = rng.randint(1, max_exp)
        gens.append(tuple(e))
    return minimalize(gens, n), [sum(g) for g in gens]


def _verify_t0d(report, F, jobs, trials=20, seed=7, **_):
    report.bounds = {"trials": trials, "seed": seed}
    rng = random.Random(seed)
    for _ in range(trials):
        I, degs = random_complete_intersection(rng)
        report.total += 1
        expected = sum(degs) - len(degs) + 1
        got = regularity(I, F)
        if got != expected:
            report.disagreements.append(f"{render_ideal(I)}: reg={got}, formula gives {expected}")


THEOREM_IDS: dict[str, Callable] = {
    "L1": _verify_l1,
    "L2": _verify_l2,
    "T1": _fixed_census(5, 2),
    "P2": _verify_p2,
    "Pn4": _verify_pn4,
    "P3": _fixed_census(5, 3),
    "P4": _fixed_census(6, 4),
    "P5": _fixed_census(6, None),
    "T2": _fixed_census(6, 3),
    "P0": _verify_p0,
    "T0c": _verify_t0c,
    "T0d": _verify_t0d,
}


def verify(
    theorem: str,
    n: int | None = None,
    d: int | None = None,
    trials: int = 20,
    seed: int = 7,
    field: Field | str | None = None,
    jobs: int = 1,
) -> VerifyReport:
    if theorem not in THEOREM_IDS:
        raise KeyError(f"unknown theorem id {theorem!r}; choose from {', '.join(THEOREM_IDS)}")
    F = parse_field(field)
    report = VerifyReport(theorem, {})
    t0 = time.perf_counter()
    THEOREM_IDS[theorem](report, F, jobs, n=n, d=d, trials=trials, seed=seed)
    report.wall_time = time.perf_counter() - t0
    return report
