"""Command-line front end.

Usage:
    scmm check "x1*x3, x1*x4, x2*x3, x2*x4" --colons
    scmm dual ideal.json
    scmm betti "x1*x2, x3*x4" --json
    scmm census --n 5 --d 2 --out census_5_2.tsv
    scmm verify T1 --n 5

Exit codes: 0 ok, 1 verification disagreements, 2 parse/usage error,
3 non-square-free input to a square-free-only command, 4 out-of-regime census.
"""

from __future__ import annotations

import json
import os
import sys
import time

import click

from .betti import betti_table
from .census import THEOREM_IDS, census_records, default_jobs, verify, write_census
from .classify import classify_scm
from .duality import alexander_dual, invariant_report
from .errors import NotSquareFreeError, OutOfRegimeError, ParseError
from .homology import parse_field
from .monomial import MonomialIdeal, colon, ideal_to_json, load_ideal, render_ideal, variable

__all__ = ["cli", "main"]

EXIT_DISAGREE = 1
EXIT_PARSE = 2
EXIT_NOT_SQUAREFREE = 3
EXIT_REGIME = 4


def _read_ideal(source: str, n: int | None) -> MonomialIdeal:
    text = source
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return load_ideal(text, n)
    except ParseError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)


def _squarefree_or_exit(fn, *args):
    try:
        return fn(*args)
    except NotSquareFreeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NOT_SQUAREFREE)


def _parse_field_option(ctx, param, value):
    try:
        return parse_field(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def _field_option(f):
    return click.option(
        "--field",
        default="q",
        envvar="SCMM_FIELD",
        show_default=True,
        callback=_parse_field_option,
        help="Coefficient field: q or gf:<p>.",
    )(f)


@click.group()
def cli():
    """Homological invariants and SCM classification of square-free monomial ideals."""


@cli.command()
@click.argument("ideal")
@click.option("--n", "n", type=int, default=None, help="Ambient variable count.")
@click.option("--colons", is_flag=True, help="Also report SCM of every colon (I : x_i).")
@click.option("--json", "as_json", is_flag=True, help="Emit one JSON object.")
@_field_option
def check(ideal, n, colons, as_json, field):
    """Full invariant report plus structural classification for one ideal."""
    I = _read_ideal(ideal, n)
    F = field
    report = _squarefree_or_exit(invariant_report, I, F)
    result = classify_scm(I, F) if report.matroidal else None
    colon_rows = []
    if colons:
        for i in range(I.n):
            J = colon(I, variable(i, I.n))
            if J.is_unit or J.is_zero:
                colon_rows.append((i, render_ideal(J), None))
            else:
                colon_rows.append((i, render_ideal(J), invariant_report(J, F).is_scm))
    if as_json:
        out = {
            "report": report.to_json(),
            "classification": None if result is None else result.to_json(),
        }
        if colons:
            out["colons"] = [
                {"var": f"x{i + 1}", "ideal": g, "scm": s} for i, g, s in colon_rows
            ]
        click.echo(json.dumps(out))
        return
    click.echo(report.render())
    if result is None:
        click.echo("rule:       n/a (not matroidal)")
    else:
        click.echo(f"verdict:    {result.verdict}")
        click.echo(f"rule:       {result.rule}")
    for i, g, s in colon_rows:
        flag = "n/a" if s is None else ("true" if s else "false")
        click.echo(f"(I : x{i + 1}) = ({g})  scm={flag}")


@cli.command()
@click.argument("ideal")
@click.option("--n", "n", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def dual(ideal, n, as_json):
    """Square-free Alexander dual."""
    I = _read_ideal(ideal, n)
    D = _squarefree_or_exit(alexander_dual, I)
    click.echo(json.dumps(ideal_to_json(D)) if as_json else render_ideal(D))


@cli.command()
@click.argument("ideal")
@click.option("--n", "n", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
@_field_option
def betti(ideal, n, as_json, field):
    """Graded Betti table of the ideal."""
    I = _read_ideal(ideal, n)
    if I.is_zero:
        click.echo("error: the zero ideal has no Betti table", err=True)
        sys.exit(EXIT_PARSE)
    table = betti_table(I, field)
    click.echo(table.dumps() if as_json else table.render())


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--d", "d", type=int, required=True)
@click.option("--full-support/--no-full-support", default=True, show_default=True)
@click.option("--gcd1/--no-gcd1", default=True, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="TSV path (default stdout).")
@click.option("--jobs", type=int, default=None, help="Worker processes (default: all cores).")
@_field_option
def census(n, d, full_support, gcd1, out, jobs, field):
    """Exhaustive census of matroidal ideals with invariants and classification."""
    t0 = time.perf_counter()
    try:
        records = census_records(
            n, d, full_support, gcd1, field, jobs or default_jobs()
        )
    except OutOfRegimeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_REGIME)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_census(records, fh)
    else:
        write_census(records, sys.stdout)
    scm = sum(r.report.is_scm for r in records)
    cm = sum(r.report.is_cm for r in records)
    bad = sum(not r.agreement for r in records)
    click.echo(
        f"# n={n} d={d} ideals={len(records)} scm={scm} cm={cm} "
        f"disagreements={bad} time={time.perf_counter() - t0:.2f}s",
        err=True,
    )


@cli.command(name="verify")
@click.argument("theorem", type=click.Choice(sorted(THEOREM_IDS)))
@click.option("--n", "n", type=int, default=None)
@click.option("--d", "d", type=int, default=None)
@click.option("--trials", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--jobs", type=int, default=None)
@_field_option
def verify_cmd(theorem, n, d, trials, seed, jobs, field):
    """Check a classification or homological result against the oracle."""
    try:
        report = verify(theorem, n, d, trials, seed, field, jobs or default_jobs())
    except OutOfRegimeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_REGIME)
    click.echo(report.render())
    sys.exit(0 if report.passed else EXIT_DISAGREE)


def main():
    cli()


if __name__ == "__main__":
    main()
