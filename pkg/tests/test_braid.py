import random
from math import lcm

import pytest

from conftest import GRID, MEDIUM_GRID, exceptional, gde, grid_id
from crgkit.abelian import reflection_subgroup
from crgkit.braid import (NotReflectionSubgroup, OrbitInconsistent, braid_abelianization_rank,
                          closed_form_disagrees, closed_form_kappa, kappa, stabilizer_braid_rank)
from crgkit.claims import expected_series_kappa
from crgkit.groups import build_gde, full_subgroup, subgroup_generated, trivial_subgroup
from crgkit.reflections import get_arrangement
from crgkit.report import class_representatives

COXETER = [(1, 1, 2), (1, 1, 3), (1, 1, 4), (2, 1, 2), (2, 1, 3), (2, 1, 4), (1, 2, 3), (1, 2, 4)]


def by_label(arr, label):
    return next(rec for rec in arr.records if rec.label == label)


def test_rank_examples():
    G = gde(1, 1, 3)
    arr = get_arrangement(G)
    assert braid_abelianization_rank(G, trivial_subgroup(G)) == 3
    assert braid_abelianization_rank(G, full_subgroup(G)) == 1
    s = by_label(arr, "H(1,2,z^0)").distinguished
    assert braid_abelianization_rank(G, subgroup_generated(G, [s])) == 2


def test_not_reflection_subgroup():
    G = gde(1, 1, 3)
    rotations = subgroup_generated(G, [G.mul(G.generators[0], G.generators[1])])
    assert rotations.order == 3
    with pytest.raises(NotReflectionSubgroup):
        braid_abelianization_rank(G, rotations)


@pytest.mark.parametrize("p", MEDIUM_GRID, ids=grid_id)
def test_rank_is_antitone(p):
    G = gde(*p)
    rnd = random.Random(str(p))
    refl = G.reflections
    for _ in range(3 if refl else 0):
        small = subgroup_generated(G, rnd.sample(refl, k=1))
        big = reflection_subgroup(G, subgroup_generated(G, list(small.generators) + rnd.sample(refl, k=1)))
        assert small.issubset(big)
        assert braid_abelianization_rank(G, small) >= braid_abelianization_rank(G, big)
    assert braid_abelianization_rank(G, full_subgroup(G)) == len(class_representatives(get_arrangement(G)))


def test_stabilizer_rank_examples():
    for d in (2, 3, 4):
        G = build_gde(d, 1, 1)
        rec = get_arrangement(G).complete_all()[0]
        assert stabilizer_braid_rank(G, rec).rank == 1
    G = gde(2, 1, 4)
    arr = get_arrangement(G)
    got = stabilizer_braid_rank(G, by_label(arr, "H(1,2,z^0)"))
    assert got.full_orbit_criterion and got.rank == 6
    assert got.to_json()["rank"] == 6


def test_stabilizer_rank_absent_for_g25():
    G = exceptional("G25")
    arr = get_arrangement(G)
    for h in class_representatives(arr):
        got = stabilizer_braid_rank(G, arr.records[h])
        assert got.rank is None and not got.full_orbit_criterion


@pytest.mark.parametrize("p", GRID, ids=grid_id)
def test_stabilizer_rank_consistency(p):
    # when defined, 1 + |H'/C| + |(Hyp - H_H)/C| equals |Hyp / C_H|
    G = gde(*p)
    arr = get_arrangement(G)
    for h in class_representatives(arr):
        rec = arr.records[h]
        got = stabilizer_braid_rank(G, rec)
        if got.rank is not None:
            assert got.rank == braid_abelianization_rank(G, rec.parabolic)


def test_kappa_examples():
    assert kappa(exceptional("G4")).kappa == 6
    assert kappa(exceptional("G13")).kappa == 8
    assert kappa(gde(1, 1, 3)).kappa == 2
    rep = kappa(gde(3, 1, 2))
    assert sorted(f for _, f in rep.orbits) == [3, 6]
    assert rep.kappa == 6
    assert rep.to_json()["kappa"] == 6


@pytest.mark.parametrize("p", COXETER, ids=grid_id)
def test_coxeter_kappa(p):
    assert kappa(gde(*p)).kappa == 2


@pytest.mark.parametrize("p", GRID, ids=grid_id)
def test_kappa_is_lcm_of_all_f(p):
    G = gde(*p)
    arr = get_arrangement(G)
    assert kappa(G).kappa == lcm(1, *(rec.f for rec in arr.records))


def test_kappa_orbit_inconsistent():
    G = build_gde(2, 1, 2)
    arr = get_arrangement(G)
    arr.complete_all()
    rec = by_label(arr, "H2")
    saved = rec.f
    rec.f = saved + 1
    try:
        with pytest.raises(OrbitInconsistent):
            kappa(G, arr)
    finally:
        rec.f = saved


def test_closed_form_formula():
    assert closed_form_kappa(1, 1, 3) == 2
    assert closed_form_kappa(2, 2, 3) == 4
    assert closed_form_kappa(3, 1, 2) == 3
    assert closed_form_kappa(1, 3, 2) is None
    assert closed_form_disagrees(3, 1, 2, 6)
    assert not closed_form_disagrees(1, 3, 2, 6)


@pytest.mark.parametrize("p", GRID, ids=grid_id)
def test_closed_form_matches_fixture(p):
    assert closed_form_kappa(*p) == expected_series_kappa(*p)
