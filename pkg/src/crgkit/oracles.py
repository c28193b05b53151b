"""Exhaustive reference computations for small groups.

These deliberately share nothing with the main algorithms beyond the
multiplication of the group table, and are only meant for orders in the
low hundreds.
"""
from __future__ import annotations

from .abelian import AbelianInvariants
from .groups import ReflectionGroup, Subgroup


def derived_members(G: ReflectionGroup, members) -> frozenset[int]:
    """Subgroup generated by all pairwise commutators, closed naively."""
    ms = list(members)
    comms = {G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))) for a in ms for b in ms}
    current = set(comms) | {G.identity}
    while True:
        new = {G.mul(x, y) for x in current for y in current} | current
        if new == current:
            return frozenset(current)
        current = new


def quotient_table(G: ReflectionGroup, members, normal) -> list[list[int]]:
    """Multiplication table of members / normal on coset indices."""
    cosets: list[frozenset[int]] = []
    where: dict[int, int] = {}
    for x in sorted(members):
        if x in where:
            continue
        c = frozenset(G.mul(x, k) for k in normal)
        for y in c:
            where[y] = len(cosets)
        cosets.append(c)
    reps = [min(c) for c in cosets]
    return [[where[G.mul(a, b)] for b in reps] for a in reps]


def _identity_of(table: list[list[int]]) -> int:
    n = len(table)
    return next(i for i in range(n) if all(table[i][j] == j for j in range(n)))


def _orders(table: list[list[int]]) -> list[int]:
    e = _identity_of(table)
    out = []
    for x in range(len(table)):
        k, y = 1, x
        while y != e:
            y = table[y][x]
            k += 1
        out.append(k)
    return out


def abelian_factors_by_splitting(table: list[list[int]]) -> AbelianInvariants:
    """Peel off cyclic summands generated by elements of maximal order."""
    factors = []
    while len(table) > 1:
        orders = _orders(table)
        g = max(range(len(table)), key=lambda x: (orders[x], -x))
        e = _identity_of(table)
        cyc, y = [e], g
        while y != e:
            cyc.append(y)
            y = table[y][g]
        factors.append(orders[g])
        # quotient by <g>
        where: dict[int, int] = {}
        reps = []
        for x in range(len(table)):
            if x in where:
                continue
            for c in cyc:
                where[table[x][c]] = len(reps)
            reps.append(x)
        table = [[where[table[a][b]] for b in reps] for a in reps]
    return AbelianInvariants.from_factors(factors)


def abelian_invariants_oracle(G: ReflectionGroup, S: Subgroup) -> AbelianInvariants:
    D = derived_members(G, S.members)
    return abelian_factors_by_splitting(quotient_table(G, S.members, D))


def centralizer_members(G: ReflectionGroup, g: int) -> frozenset[int]:
    return frozenset(w for w in range(G.order) if G.mul(w, g) == G.mul(g, w))
