"""Published claims, stored as fixture data, and comparison against computed values."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from pathlib import Path

from .braid import kappa
from .groups import ReflectionGroup
from .reflections import get_arrangement
from .report import class_representatives, exactness_rows, hyperplane_class, series_row_key

FIXTURE_DIR = Path(__file__).parent / "data" / "fixtures"


@lru_cache(maxsize=None)
def load_fixture(name: str) -> dict:
    with open(FIXTURE_DIR / f"{name}.json") as fh:
        return json.load(fh)


def evaluate(expr: str, d: int, e: int, r: int):
    """Evaluate a fixture expression over the integers d, e, r only."""
    return eval(expr, {"__builtins__": {}}, {"d": d, "e": e, "r": r})


def expected_series_row(d: int, e: int, r: int, family: str) -> tuple[int, int] | None:
    """(f_H, e_H) from the closed-form table, or None if no row applies."""
    for row in load_fixture("ftable")["rows"]:
        if row["family"] == family and evaluate(row["when"], d, e, r):
            return evaluate(row["f"], d, e, r), evaluate(row["e_H"], d, e, r)
    return None


def expected_series_failure(d: int, e: int, r: int, family: str) -> bool:
    rules = load_fixture("claims")["exactness"]["series_failures"]
    return any(x["family"] == family and evaluate(x["when"], d, e, r) for x in rules)


def expected_series_orbits_agree(d: int, e: int, r: int, family: str) -> bool | None:
    for x in load_fixture("claims")["orbits"]["series_all_orbits_agree"]:
        if x["family"] == family:
            return bool(evaluate(x["when"], d, e, r))
    return None


def expected_series_kappa(d: int, e: int, r: int) -> int | None:
    for row in load_fixture("ftable")["kappa_closed_form"]:
        if evaluate(row["when"], d, e, r):
            return evaluate(row["kappa"], d, e, r)
    return None


def ramification_rows(name: str) -> list[tuple[int, int, int]] | None:
    rows = load_fixture("ramification")["rows"].get(name)
    return None if rows is None else [tuple(x) for x in rows]


@dataclass(frozen=True)
class Finding:
    check: str
    subject: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def row(self) -> list:
        return [self.check, self.subject, _plain(self.expected), _plain(self.actual), self.ok]


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    if isinstance(x, list):
        return [_plain(y) for y in x]
    return x


def check_ramification(G: ReflectionGroup) -> list[Finding]:
    arr = get_arrangement(G)
    arr.complete_all()
    fam = G.family
    out = []
    if fam.is_series:
        for rec in arr.records:
            key = series_row_key(G, rec)
            out.append(Finding("ramification", f"{fam.label()} {rec.label}",
                               expected_series_row(fam.d, fam.e, fam.r, key), (rec.f, rec.e)))
        return out
    published = ramification_rows(fam.name)
    got = sorted((arr.records[h].e, arr.records[h].f, arr.records[h].ramification) for h in class_representatives(arr))
    out.append(Finding("ramification", fam.label(), sorted(published) if published is not None else None, got))
    return out


def check_kappa(G: ReflectionGroup) -> list[Finding]:
    fam = G.family
    value = kappa(G).kappa
    lcm_f = lcm(1, *(rec.f for rec in get_arrangement(G).records))
    out = [Finding("kappa-lcm", fam.label(), lcm_f, value)]
    if fam.is_series:
        conflict = evaluate(load_fixture("ftable")["kappa_closed_form_conflict"], fam.d, fam.e, fam.r)
        expected = expected_series_kappa(fam.d, fam.e, fam.r)
        if expected is not None and not conflict:
            out.append(Finding("kappa-closed-form", fam.label(), expected, value))
    else:
        published = load_fixture("ramification")["kappa"].get(fam.name)
        if published is not None:
            out.append(Finding("kappa-table", fam.label(), published, value))
    return out


def check_exactness(G: ReflectionGroup, jobs: int = 1) -> list[Finding]:
    fam = G.family
    arr = get_arrangement(G)
    rows = exactness_rows(G, jobs)
    out = []
    for row in rows:
        h, label, injective = row[0], row[1], row[7]
        if fam.is_series:
            key = series_row_key(G, arr.records[h])
            fails = expected_series_failure(fam.d, fam.e, fam.r, key)
        else:
            fails = fam.name in load_fixture("claims")["exactness"]["exceptional_failures"]
        out.append(Finding("exactness", f"{fam.label()} {label}", not fails, injective))
    return out


def check_orbits(G: ReflectionGroup, jobs: int = 1) -> list[Finding]:
    fam = G.family
    arr = get_arrangement(G)
    rows = exactness_rows(G, jobs)
    claims = load_fixture("claims")["orbits"]
    out = []
    if fam.is_series:
        for row in rows:
            h = row[0]
            key = series_row_key(G, arr.records[h])
            expected = expected_series_orbits_agree(fam.d, fam.e, fam.r, key)
            out.append(Finding("orbits-all", f"{fam.label()} {row[1]}", expected, row[10]))
        return out
    cls = hyperplane_class(arr)
    bad_nc = {(x["e"], x["f"]) for x in claims["noncommuting_mismatch"] if x["group"] == fam.name}
    for h in class_representatives(arr):
        row = rows[h]
        rec = arr.records[h]
        subject = f"{fam.label()} class {cls[h]} (e={rec.e}, f={rec.f})"
        out.append(Finding("orbits-commuting", subject, fam.name not in claims["commuting_mismatch"], row[8]))
        out.append(Finding("orbits-noncommuting", subject, (rec.e, rec.f) not in bad_nc, row[9]))
    return out


CHECKS = {
    "ramification": lambda G, jobs: check_ramification(G),
    "kappa": lambda G, jobs: check_kappa(G),
    "exactness": check_exactness,
    "orbits": check_orbits,
}


def run_checks(G: ReflectionGroup, which: str, jobs: int = 1) -> list[Finding]:
    names = list(CHECKS) if which == "all" else [which]
    out = []
    for name in names:
        out += CHECKS[name](G, jobs)
    return out
