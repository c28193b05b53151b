"""crgkit command line.

    crgkit --d 3 --e 1 --r 2 table ramification
    crgkit --exceptional G25 --format md check exactness
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .claims import run_checks
from .config import FORMATS, RunConfig
from .groups import DATA_DIR_ENV, DEFAULT_ORDER_BOUND, ClosureMismatch, GroupTooLarge, default_data_dir
from .reflections import get_arrangement
from .report import (Table, group_meta, hyperplane_table, info_table, kappa_table, orbit_table,
                     ramification_table, stabilizer_table)


def _emit(ctx: click.Context, table: Table) -> None:
    click.echo(table.render(ctx.obj["config"].fmt), nl=False)


def _group(ctx: click.Context):
    cfg: RunConfig = ctx.obj["config"]
    if "group" not in ctx.obj:
        try:
            ctx.obj["group"] = cfg.build()
        except (GroupTooLarge, ClosureMismatch, FileNotFoundError) as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(2)
    return ctx.obj["group"]


def _hyperplane_index(G, spec: str | None) -> list[int] | None:
    if spec is None:
        return None
    arr = get_arrangement(G)
    if spec.isdigit():
        idx = int(spec)
        if idx >= len(arr):
            raise click.BadParameter(f"there are only {len(arr)} hyperplanes")
        return [idx]
    for rec in arr.records:
        if rec.label == spec:
            return [rec.index]
    raise click.BadParameter(f"no hyperplane labelled {spec!r}")


@click.group()
@click.option("--d", "d", type=int, default=None, help="d in G(de,e,r)")
@click.option("--e", "e", type=int, default=None, help="e in G(de,e,r)")
@click.option("--r", "r", type=int, default=None, help="rank r in G(de,e,r)")
@click.option("--exceptional", default=None, help="exceptional group name, e.g. G4")
@click.option("--data-dir", type=click.Path(path_type=Path), default=None,
              help=f"exceptional data directory (default ${DATA_DIR_ENV} or the bundled data)")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True)
@click.option("--bound", type=int, default=DEFAULT_ORDER_BOUND, show_default=True, help="maximum group order")
@click.option("--jobs", type=int, default=1, show_default=True, help="worker threads for per-class work")
@click.pass_context
def main(ctx, d, e, r, exceptional, data_dir, fmt, bound, jobs):
    """Ramification data of complex reflection groups."""
    try:
        cfg = RunConfig(d=d, e=e, r=r, exceptional=exceptional, data_dir=data_dir or default_data_dir(),
                        fmt=fmt, bound=bound, jobs=jobs)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    ctx.obj = {"config": cfg}


@main.group()
def group():
    """Whole-group data."""


@group.command("info")
@click.pass_context
def group_info(ctx):
    """Order, rank, hyperplane counts and abelianization."""
    _emit(ctx, info_table(_group(ctx)))


@main.command()
@click.pass_context
def hyperplanes(ctx):
    """Every hyperplane with its e_H and class."""
    _emit(ctx, hyperplane_table(_group(ctx)))


@main.command()
@click.option("--hyperplane", default=None, help="index or label; default all")
@click.pass_context
def stabilizer(ctx, hyperplane):
    """N_H, C_H, f_H, d_H per hyperplane."""
    G = _group(ctx)
    _emit(ctx, stabilizer_table(G, _hyperplane_index(G, hyperplane)))


@main.command()
@click.option("--hyperplane", default="0", show_default=True, help="index or label")
@click.pass_context
def orbits(ctx, hyperplane):
    """Orbits of N_H and C_H on the hyperplanes."""
    G = _group(ctx)
    _emit(ctx, orbit_table(G, _hyperplane_index(G, hyperplane)[0]))


@main.group()
def table():
    """Published tables."""


@table.command("ramification")
@click.pass_context
def table_ramification(ctx):
    """One row per hyperplane class: e_H, f_H, d_H."""
    _emit(ctx, ramification_table(_group(ctx)))


@main.command("kappa")
@click.pass_context
def kappa_cmd(ctx):
    """f per hyperplane class and their lcm."""
    _emit(ctx, kappa_table(_group(ctx)))


@main.command()
@click.argument("which", type=click.Choice(["exactness", "orbits", "kappa", "ramification", "all"]),
                default="all")
@click.pass_context
def check(ctx, which):
    """Compare computed verdicts with the bundled claim fixtures; exit 1 on mismatch."""
    G = _group(ctx)
    cfg: RunConfig = ctx.obj["config"]
    findings = run_checks(G, which, cfg.jobs)
    rows = [f.row() for f in findings]
    bad = [f for f in findings if not f.ok]
    meta = {**group_meta(G), "check": which, "passed": len(findings) - len(bad), "failed": len(bad)}
    _emit(ctx, Table("check", ["check", "subject", "expected", "actual", "ok"], rows, meta))
    if bad:
        diff = [{"check": f.check, "subject": f.subject, "expected": f.row()[2], "actual": f.row()[3]} for f in bad]
        click.echo(json.dumps({"mismatches": diff}, indent=2), err=True)
        ctx.exit(1)


if __name__ == "__main__":
    sys.exit(main())
