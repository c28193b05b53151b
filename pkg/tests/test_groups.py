import itertools
import random
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GRID, MEDIUM_GRID, SMALL_GRID, gde, grid_id, exceptional
from crgkit.cyclo import Cyclotomic
from crgkit.groups import (ClosureMismatch, ExceptionalRecord, GroupTooLarge, MonomialElement,
                           build_from_matrices, build_gde, centralizer, closure, full_subgroup,
                           gde_order, load_record, pi, subgroup_generated, trivial_subgroup)
from crgkit.oracles import centralizer_members


@pytest.mark.parametrize("p", GRID, ids=grid_id)
def test_order_formula(p):
    d, e, r = p
    G = build_gde(d, e, r)
    assert G.order == gde_order(d, e, r) == (d * e) ** r * factorial(r) // e


def test_spec_examples():
    assert build_gde(1, 1, 3).order == 6
    G = build_gde(3, 1, 2)
    assert G.order == 18 and len(G.reflections) == 7
    K = build_gde(1, 2, 2)
    assert K.order == 4
    assert all(K.element_order(i) <= 2 for i in range(4))


def test_canonical_order_is_sorted():
    G = build_gde(2, 2, 3)
    elems = [G.elements[i] for i in range(G.order)]
    assert elems == sorted(elems, key=lambda x: (x.perm, x.exps))
    assert G.elements[G.identity] == MonomialElement((0, 1, 2), (0, 0, 0), 4)


def test_too_large():
    with pytest.raises(GroupTooLarge):
        build_gde(4, 4, 4, bound=1000)
    with pytest.raises(ValueError):
        build_gde(0, 1, 2)


@pytest.mark.parametrize("p", GRID, ids=grid_id)
def test_generators_generate(p):
    G = gde(*p)
    assert len(closure(G, G.generators)) == G.order
    # reflections of G(de,e,r) are exactly the elements fixing a hyperplane
    assert all(G.fixed_dims[s] == G.rank - 1 for s in G.reflections)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(MEDIUM_GRID), st.randoms(use_true_random=False))
def test_dense_is_homomorphism(p, rnd):
    G = gde(*p)
    i, j = rnd.randrange(G.order), rnd.randrange(G.order)
    a, b = G.elements[i], G.elements[j]
    assert (a * b).to_dense() == a.to_dense() * b.to_dense()
    assert G.dense(G.mul(i, j)) == G.dense(i) * G.dense(j)
    assert G.mul(i, G.inv(i)) == G.identity


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_GRID), st.randoms(use_true_random=False))
def test_closure_idempotent(p, rnd):
    G = gde(*p)
    gens = rnd.sample(range(G.order), k=min(2, G.order))
    first = closure(G, gens)
    assert closure(G, first) == first
    assert list(first) == sorted(first)


@pytest.mark.parametrize("p", SMALL_GRID, ids=grid_id)
def test_centralizer_matches_brute_force(p):
    G = gde(*p)
    rnd = random.Random(str(p))
    for g in rnd.sample(range(G.order), k=min(5, G.order)):
        C = centralizer(G, g)
        assert C.member_set == centralizer_members(G, g)
        assert set(closure(G, [g])) <= C.member_set


def test_centralizer_examples():
    G = build_gde(1, 1, 3)
    assert centralizer(G, G.identity).order == 6
    t = G.index_of(MonomialElement((1, 0, 2), (0, 0, 0), 1))
    assert centralizer(G, t).order == 2
    H = build_gde(2, 1, 2)
    central = H.index_of(MonomialElement((0, 1), (1, 1), 2))
    assert centralizer(H, central).order == H.order


def test_subgroup_generated_examples():
    G = build_gde(1, 1, 3)
    assert subgroup_generated(G, []).order == 1
    assert subgroup_generated(G, G.generators).order == 6
    t = G.index_of(MonomialElement((1, 0, 2), (0, 0, 0), 1))
    assert subgroup_generated(G, [t]).order == 2


def test_pi():
    G = build_gde(3, 1, 3)
    assert pi(G.elements[G.identity]) == 1
    assert pi(MonomialElement((0, 1, 2), (1, 0, 0), 3)) == Cyclotomic.zeta(3, 1)
    assert pi(MonomialElement((1, 0, 2), (0, 0, 0), 3)) == 1
    # pi lands in mu_d on G(de,e,r)
    H = build_gde(2, 2, 2)
    assert all(pi(x) ** 2 == 1 for x in H.elements)


def test_trivial_record():
    G = build_from_matrices(ExceptionalRecord("T", 1, 1, 2, []))
    assert G.order == 1 and G.reflections == []
    assert full_subgroup(G).order == trivial_subgroup(G).order == 1


def test_closure_mismatch():
    rec = load_record("G4")
    for declared in (23, 25):
        bad = ExceptionalRecord("G4", declared, rec.conductor, rec.rank, rec.generators)
        with pytest.raises(ClosureMismatch):
            build_from_matrices(bad)
    with pytest.raises(GroupTooLarge):
        build_from_matrices(rec, bound=10)


def test_exceptional_table_is_multiplication():
    G = exceptional("G4")
    rnd = random.Random(4)
    for _ in range(50):
        i, j = rnd.randrange(G.order), rnd.randrange(G.order)
        assert G.dense(G.mul(i, j)) == G.dense(i) * G.dense(j)
    for i, j, k in itertools.islice(itertools.product(range(G.order), repeat=3), 0, 2000, 7):
        assert G.mul(G.mul(i, j), k) == G.mul(i, G.mul(j, k))


def test_record_json_round_trip():
    rec = load_record("G5")
    again = ExceptionalRecord.from_json(rec.to_json())
    assert again.to_json() == rec.to_json()
