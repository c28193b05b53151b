"""Derived subgroups, abelian invariants and the stabilizer exactness criteria.

For a hyperplane H the stabilizer N_H maps onto the cyclic group of order
f_H with kernel C_H, so C_H^ab -> N_H^ab -> mu_f -> 1 is exact.  The map
C_H^ab -> N_H^ab is injective exactly when |C_H^ab| * f_H = |N_H^ab|; the
geometric form of the same condition compares the orbits of N_H and C_H
on the hyperplanes commuting with H.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cyclo import Cyclotomic
from .groups import ReflectionGroup, Subgroup, closure, subgroup_from_members
from .reflections import (Arrangement, Hyperplane, HyperplaneRecord, first_nonzero,
                          get_arrangement, vec_mat)


class CriterionMismatch(RuntimeError):
    """The count criterion and the orbit criterion disagree."""


class NotStable(ValueError):
    """A subgroup generator moves the hyperplane multiset of a form product."""


# --------------------------------------------------------------------------
# derived subgroup


def _commutator(G: ReflectionGroup, a: int, b: int) -> int:
    return G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))


def derived_subgroup(G: ReflectionGroup, S: Subgroup) -> Subgroup:
    """[S, S] as the normal closure in S of commutators of generators."""
    gens = list(S.generators) if S.generators else list(S.members)
    seeds = {_commutator(G, a, b) for i, a in enumerate(gens) for b in gens[i + 1:]}
    seeds.discard(G.identity)
    members = closure(G, seeds)
    mset = set(members)
    pending = deque(seeds)
    while pending:
        k = pending.popleft()
        for g in gens:
            y = G.conj(g, k)
            if y not in mset:
                members = closure(G, list(seeds) + [y])
                seeds.add(y)
                mset = set(members)
                pending.append(y)
    return Subgroup(G, members, tuple(sorted(seeds)))


# --------------------------------------------------------------------------
# abelian invariants


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group."""

    factors: tuple[int, ...]
    order: int

    def __post_init__(self):
        if any(f <= 1 for f in self.factors):
            raise ValueError("invariant factors must exceed 1")
        if any(b % a for a, b in zip(self.factors, self.factors[1:])):
            raise ValueError(f"not a divisibility chain: {self.factors}")
        if prod(self.factors) != self.order:
            raise ValueError("order does not match the factors")

    @classmethod
    def from_factors(cls, factors: Iterable[int]) -> "AbelianInvariants":
        fs = tuple(sorted(f for f in factors if f > 1))
        return cls(fs, prod(fs))

    def to_json(self) -> dict:
        return {"factors": list(self.factors), "order": self.order}


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def coset_labels(G: ReflectionGroup, S: Subgroup, K: Subgroup) -> tuple[dict[int, int], list[int]]:
    """Label every member of S by its coset xK; K is assumed normal in S.

    Returns (label of each member, one representative per label)."""
    label: dict[int, int] = {}
    reps: list[int] = []
    kmembers = list(K.members)
    table = G._table
    kidx = np.asarray(kmembers, dtype=np.int64)
    for x in S.members:
        if x in label:
            continue
        c = len(reps)
        reps.append(x)
        coset = table[x, kidx].tolist() if table is not None else [G.mul(x, k) for k in kmembers]
        for y in coset:
            label[y] = c
    return label, reps


def invariants_from_counts(order: int, count) -> AbelianInvariants:
    """Invariant factors of an abelian group of the given order.

    count(p, k) must return the number of elements x with x^(p^k) = 1.  For a
    p-primary part with partition lambda, log_p of that number is
    sum_i min(lambda_i, k), so successive differences count the parts >= k.
    """
    parts: dict[int, list[int]] = {}
    for p, v in _factorize(order).items():
        logs = [0]
        for k in range(1, v + 1):
            n, e = count(p, k), 0
            while n > 1:
                n //= p
                e += 1
            logs.append(e)
        at_least = [logs[k] - logs[k - 1] for k in range(1, v + 1)]
        lam = []
        for k in range(1, v + 1):
            nxt = at_least[k] if k < v else 0
            lam += [k] * (at_least[k - 1] - nxt)
        parts[p] = sorted(lam, reverse=True)
    width = max((len(v) for v in parts.values()), default=0)
    factors = []
    for j in range(width):
        factors.append(prod(p ** lam[j] for p, lam in parts.items() if j < len(lam)))
    return AbelianInvariants.from_factors(factors)


def abelian_invariants(G: ReflectionGroup, S: Subgroup, derived: Subgroup | None = None) -> AbelianInvariants:
    """Invariant factors of S/[S,S] by counting p^k-torsion cosets."""
    K = derived if derived is not None else derived_subgroup(G, S)
    if S.order % K.order:
        raise ValueError("derived subgroup order does not divide the subgroup order")
    m = S.order // K.order
    if m == 1:
        return AbelianInvariants((), 1)
    label, reps = coset_labels(G, S, K)
    ident = label[G.identity]

    def count(p: int, k: int) -> int:
        return sum(1 for x in reps if label[G.power(x, p ** k)] == ident)

    return invariants_from_counts(m, count)


# --------------------------------------------------------------------------
# exactness


@dataclass(frozen=True)
class ExactnessReport:
    hyperplane: Hyperplane
    c_ab: AbelianInvariants
    n_ab: AbelianInvariants
    f: int
    injective: bool
    orbit_criterion_commuting: bool
    orbit_criterion_full: bool
    orbit_criterion_noncommuting: bool

    def to_json(self) -> dict:
        return {
            "hyperplane": str(self.hyperplane),
            "c_ab": self.c_ab.to_json(),
            "n_ab": self.n_ab.to_json(),
            "f": self.f,
            "injective": self.injective,
            "orbit_criterion_commuting": self.orbit_criterion_commuting,
            "orbit_criterion_noncommuting": self.orbit_criterion_noncommuting,
            "orbit_criterion_full": self.orbit_criterion_full,
        }


def orbits_agree(arr: Arrangement, A: Subgroup, B: Subgroup, hyps: Iterable[int]) -> bool:
    hyps = sorted(hyps)
    return arr.orbits(A, hyps) == arr.orbits(B, hyps)


def orbit_criteria(arr: Arrangement, rec: HyperplaneRecord) -> tuple[bool, bool, bool]:
    """(commuting, non-commuting, all hyperplanes) orbit agreement of N_H and C_H."""
    rec = arr.complete(rec.index)
    N, C = rec.stabilizer, rec.parabolic
    commuting = set(rec.commuting) - {rec.index}
    others = set(range(len(arr))) - set(rec.commuting)
    a = orbits_agree(arr, N, C, commuting)
    b = orbits_agree(arr, N, C, others)
    c = orbits_agree(arr, N, C, range(len(arr)))
    return a, b, c


def exactness_report(G: ReflectionGroup, rec: HyperplaneRecord, arr: Arrangement | None = None) -> ExactnessReport:
    arr = arr or get_arrangement(G)
    rec = arr.complete(rec.index)
    c_ab = abelian_invariants(G, rec.parabolic)
    n_ab = abelian_invariants(G, rec.stabilizer)
    injective = c_ab.order * rec.f == n_ab.order
    commuting, noncommuting, full = orbit_criteria(arr, rec)
    if injective != commuting:
        raise CriterionMismatch(
            f"{G.family.label()} {rec.label}: |C^ab|*f={c_ab.order * rec.f}, |N^ab|={n_ab.order}, "
            f"commuting orbits agree={commuting}")
    return ExactnessReport(rec.hyperplane, c_ab, n_ab, rec.f, injective, commuting, full, noncommuting)


# --------------------------------------------------------------------------
# a_H and semi-invariants


def subgroup_exponent_a(C: Subgroup, rec: HyperplaneRecord) -> int:
    """a_H with C intersect W_H = <s_H^a_H>; e_H when the intersection is trivial."""
    inter = [x for x in rec.fixator.members if x in C]
    return rec.e // len(inter)


@dataclass(frozen=True)
class LinearFormProduct:
    """scalar * prod alpha_H^k over canonical normals alpha_H."""

    scalar: Cyclotomic
    factors: tuple[tuple[Hyperplane, int], ...]

    def __post_init__(self):
        if self.scalar.is_zero():
            raise ValueError("scalar must be nonzero")
        if any(k <= 0 for _, k in self.factors):
            raise ValueError("exponents must be positive")

    @classmethod
    def of(cls, items: Iterable[tuple[Hyperplane, int]], scalar: Cyclotomic | None = None) -> "LinearFormProduct":
        merged: dict[Hyperplane, int] = {}
        for h, k in items:
            merged[h] = merged.get(h, 0) + k
        return cls(scalar if scalar is not None else Cyclotomic.one(), tuple(sorted(merged.items())))


def _index_of_hyperplane(arr: Arrangement) -> dict[tuple, int]:
    cache = getattr(arr, "_key_index", None)
    if cache is None:
        cache = {rec.hyperplane.key: rec.index for rec in arr.records}
        arr._key_index = cache
    return cache


def act_on_form(G: ReflectionGroup, g: int, normal) -> tuple:
    """Row vector of g.alpha = alpha o g^-1."""
    return vec_mat(normal, G.matrix(G.inv(g)))


def semi_invariance_check(G: ReflectionGroup, S: Subgroup, Q: LinearFormProduct,
                          arr: Arrangement | None = None) -> dict[int, Cyclotomic]:
    """Scalars lambda_g with g.Q = lambda_g Q for each generator g of S."""
    arr = arr or get_arrangement(G)
    where = _index_of_hyperplane(arr)
    exps = {where[h.key]: k for h, k in Q.factors}
    out: dict[int, Cyclotomic] = {}
    for g in S.generators:
        scalar = Cyclotomic.one(G.conductor)
        moved: dict[int, int] = {}
        for h, k in exps.items():
            image = act_on_form(G, g, arr.records[h].hyperplane.normal)
            target = arr.act(g, h)
            normal = arr.records[target].hyperplane.normal
            c = image[first_nonzero(normal)]
            scalar = scalar * c ** k
            moved[target] = moved.get(target, 0) + k
        if moved != exps:
            raise NotStable(f"generator {g} does not preserve the hyperplane multiset")
        out[g] = scalar
    return out


def all_trivial(scalars: Mapping[int, Cyclotomic]) -> bool:
    return all(c == 1 for c in scalars.values())


def class_product(G: ReflectionGroup, C: Subgroup, orbit: Sequence[int],
                  arr: Arrangement | None = None) -> LinearFormProduct:
    """prod over a C-class of alpha_H^(e_H / a_H)."""
    arr = arr or get_arrangement(G)
    items = []
    for h in orbit:
        rec = arr.records[h]
        items.append((rec.hyperplane, rec.e // subgroup_exponent_a(C, rec)))
    return LinearFormProduct.of(items)


def stabilizer_form(rec: HyperplaneRecord) -> LinearFormProduct:
    """alpha_H^f_H."""
    return LinearFormProduct.of([(rec.hyperplane, rec.f)])


def reflection_subgroup(G: ReflectionGroup, S: Subgroup) -> Subgroup:
    """Subgroup generated by the reflections of G lying in S."""
    mset = S.member_set
    refl = [s for s in G.reflections if s in mset]
    return subgroup_from_members(G, closure(G, refl))


def is_reflection_subgroup(G: ReflectionGroup, S: Subgroup) -> bool:
    mset = S.member_set
    refl = [s for s in G.reflections if s in mset]
    return len(closure(G, refl)) == S.order
