"""Acceptance suite: one check per criterion, each reporting a single pass/fail line.

Expected values come from the fixture files under crgkit/data/fixtures, never from
the test bodies.  Run directly (python tests/test_acceptance.py) for the summary
lines alone; under pytest they are repeated in the terminal summary.
"""
from __future__ import annotations

import random
import time
from math import lcm

import pytest

from conftest import ACCEPTANCE_LINES, GRID, SHIPPED, SMALL_GRID, exceptional, gde
from crgkit.abelian import (abelian_invariants, all_trivial, class_product, derived_subgroup,
                            reflection_subgroup, semi_invariance_check, stabilizer_form)
from crgkit.braid import closed_form_disagrees, kappa
from crgkit.claims import (check_exactness, check_kappa, check_orbits, check_ramification, evaluate,
                           load_fixture)
from crgkit.groups import centralizer, full_subgroup, subgroup_generated
from crgkit.oracles import abelian_invariants_oracle, derived_members
from crgkit.reflections import commuting_characterizations, get_arrangement
from crgkit.report import class_representatives, exactness_rows, hyperplane_class

GRID_GROUPS = len(GRID)


def _bad(findings):
    return [f.row() for f in findings if not f.ok]


def criterion_1():
    required = load_fixture("ramification")["required"]
    missing = sorted(set(required) - set(SHIPPED), key=lambda s: int(s[1:]))
    bad = []
    for name in SHIPPED:
        bad += _bad(check_ramification(exceptional(name)))
    ok = not missing and not bad
    return ok, f"{len(SHIPPED)} exceptional groups; missing required {missing}; mismatches {bad[:3]}"


def criterion_2():
    bad, count = [], 0
    for p in GRID:
        findings = check_ramification(gde(*p))
        count += len(findings)
        bad += [f.row() for f in findings if not f.ok or f.expected is None]
    return not bad, f"{count} hyperplanes over {GRID_GROUPS} groups; mismatches {bad[:3]}"


def criterion_3():
    conflict_expr = load_fixture("ftable")["kappa_closed_form_conflict"]
    bad, flagged = [], []
    for p in GRID:
        G = gde(*p)
        findings = check_kappa(G)
        bad += _bad(findings)
        value = kappa(G).kappa
        if evaluate(conflict_expr, *p):
            # lcm asserted; the published closed form is only flagged here
            if closed_form_disagrees(*p, value):
                flagged.append(G.family.label())
            if value != lcm(1, *(rec.f for rec in get_arrangement(G).records)):
                bad.append([G.family.label(), "lcm", value])
    tabulated = load_fixture("ramification")["kappa"]
    for name, want in tabulated.items():
        got = kappa(exceptional(name)).kappa
        if got != want:
            bad.append([name, want, got])
    return not bad, f"grid plus {sorted(tabulated)}; closed form flagged at {flagged}; mismatches {bad[:3]}"


def criterion_4():
    bad, failures = [], []
    subjects = [gde(*p) for p in GRID] + [exceptional(n) for n in SHIPPED]
    for G in subjects:
        findings = check_exactness(G)
        bad += _bad(findings)
        failures += [f.subject for f in findings if f.actual is False]
    return not bad, f"{len(failures)} non-injective hyperplanes; mismatches {bad[:3]}"


def criterion_5():
    claims = load_fixture("claims")["orbits"]
    bad, census = [], []
    for name in SHIPPED:
        G = exceptional(name)
        findings = check_orbits(G)
        bad += _bad(findings)
        arr = get_arrangement(G)
        cls = hyperplane_class(arr)
        rows = exactness_rows(G)
        for h in class_representatives(arr):
            if not rows[h][9]:
                census.append((name, cls[h]))
    expected = sorted((x["group"], x["repo_class"]) for x in claims["noncommuting_mismatch"])
    if sorted(census) != expected:
        bad.append(["census", expected, sorted(census)])
    published = sorted((x["group"], x["published_class"]) for x in claims["noncommuting_mismatch"])
    return not bad, f"non-commuting mismatch at {published} (published indexing); mismatches {bad[:3]}"


def _properties(G, rnd) -> list[str]:
    out = []
    arr = get_arrangement(G)
    label = G.family.label()
    W = full_subgroup(G)
    reps = class_representatives(arr)
    for rec in arr.records:
        if rec.stabilizer.order != rec.f * rec.parabolic.order or rec.f % rec.e:
            out.append(f"{label} {rec.label}: orders")
    subgroups = [W]
    for h in reps:
        rec = arr.records[h]
        if centralizer(G, rec.distinguished).members != rec.stabilizer.members:
            out.append(f"{label} {rec.label}: N_H is not the centralizer")
        if reflection_subgroup(G, rec.parabolic).members != rec.parabolic.members:
            out.append(f"{label} {rec.label}: Steinberg")
        if not all_trivial(semi_invariance_check(G, rec.stabilizer, stabilizer_form(rec), arr)):
            out.append(f"{label} {rec.label}: alpha_H^f not invariant")
        subgroups += [rec.stabilizer, rec.parabolic]
    refl = G.reflections
    extra = [subgroup_generated(G, rnd.sample(refl, k=min(2, len(refl)))) for _ in range(2)] if refl else []
    for C in [W] + [arr.records[h].parabolic for h in reps] + extra:
        for orbit in arr.orbits(C):
            if not all_trivial(semi_invariance_check(G, C, class_product(G, C, orbit, arr), arr)):
                out.append(f"{label}: class product not invariant")
    for S in subgroups:
        K = derived_subgroup(G, S)
        if S.order != K.order * abelian_invariants(G, S, K).order:
            out.append(f"{label}: |S| != |[S,S]| |S^ab|")
    for row in exactness_rows(G):
        # exactness_rows raises CriterionMismatch on disagreement; this re-reads the verdicts
        if row[7] != row[8]:
            out.append(f"{label} {row[1]}: count vs orbit criterion")
    n = len(arr)
    for h in range(n):
        for k in range(n):
            if len(set(commuting_characterizations(arr, h, k))) != 1:
                out.append(f"{label}: commuting characterizations differ")
    return out


def criterion_6():
    rnd = random.Random(6)
    bad = []
    for p in GRID:
        bad += _properties(gde(*p), rnd)
    return not bad, f"{GRID_GROUPS} groups; failures {bad[:3]}"


def criterion_7():
    bad, count = [], 0
    for p in SMALL_GRID:
        G = gde(*p)
        arr = get_arrangement(G)
        subgroups = [full_subgroup(G)]
        for rec in arr.records:
            subgroups += [rec.stabilizer, rec.parabolic]
        for S in subgroups:
            count += 1
            K = derived_subgroup(G, S)
            if K.member_set != derived_members(G, S.members):
                bad.append(f"{G.family.label()}: derived subgroup of order {S.order}")
            if abelian_invariants(G, S, K) != abelian_invariants_oracle(G, S):
                bad.append(f"{G.family.label()}: invariants of subgroup of order {S.order}")
    return not bad, f"{count} subgroups over {len(SMALL_GRID)} groups; failures {bad[:3]}"


CRITERIA = {
    1: ("exceptional ramification table", criterion_1),
    2: ("infinite-series f-table", criterion_2),
    3: ("kappa checks", criterion_3),
    4: ("exactness-failure census", criterion_4),
    5: ("orbit-coincidence census", criterion_5),
    6: ("property suite", criterion_6),
    7: ("brute-force oracle equivalence", criterion_7),
}


def run_criterion(k: int) -> tuple[bool, str]:
    title, fn = CRITERIA[k]
    start = time.perf_counter()
    ok, detail = fn()
    line = f"criterion {k} ({title}): {'PASS' if ok else 'FAIL'} [{time.perf_counter() - start:.1f}s] {detail}"
    ACCEPTANCE_LINES[k] = line
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, line = run_criterion(k)
    print(line)
    assert ok, line


if __name__ == "__main__":
    for k in sorted(CRITERIA):
        print(run_criterion(k)[1], flush=True)
