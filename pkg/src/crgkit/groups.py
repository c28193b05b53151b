"""Finite complex reflection groups as indexed element tables.

The imprimitive series G(de, e, r) is enumerated directly as monomial
matrices.  Exceptional groups are closed from generator matrices and
carry a full multiplication table.  Everything downstream works with
element indices into the canonically sorted table.
"""
from __future__ import annotations

import itertools
import json
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, gcd
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .cyclo import Cyclotomic, CyclotomicField, parse_coeffs

DEFAULT_ORDER_BOUND = 10**7
DATA_DIR_ENV = "CRGKIT_DATA_DIR"


class GroupTooLarge(ValueError):
    pass


class ClosureMismatch(ValueError):
    pass


# --------------------------------------------------------------------------
# elements


@dataclass(frozen=True, order=True)
class MonomialElement:
    """Monomial matrix with M e_j = zeta_m^exps[j] e_{perm[j]} (0-based)."""

    perm: tuple[int, ...]
    exps: tuple[int, ...]
    modulus: int

    @property
    def rank(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "MonomialElement") -> "MonomialElement":
        p, a, m = self.perm, self.exps, self.modulus
        q, b = other.perm, other.exps
        return MonomialElement(
            tuple(p[k] for k in q), tuple((b[k] + a[q[k]]) % m for k in range(len(q))), m
        )

    def inverse(self) -> "MonomialElement":
        r, m = len(self.perm), self.modulus
        perm = [0] * r
        exps = [0] * r
        for j, i in enumerate(self.perm):
            perm[i] = j
            exps[i] = (-self.exps[j]) % m
        return MonomialElement(tuple(perm), tuple(exps), m)

    def to_dense(self) -> "DenseElement":
        r, m = len(self.perm), self.modulus
        zero = Cyclotomic.zero(m)
        rows = [[zero] * r for _ in range(r)]
        for j in range(r):
            rows[self.perm[j]][j] = Cyclotomic.zeta(m, self.exps[j])
        return DenseElement(tuple(tuple(row) for row in rows))

    def fixed_dim(self) -> int:
        """Dimension of the fixed space: cycles whose coefficient product is 1."""
        seen = [False] * len(self.perm)
        count = 0
        for start in range(len(self.perm)):
            if seen[start]:
                continue
            total, j = 0, start
            while not seen[j]:
                seen[j] = True
                total += self.exps[j]
                j = self.perm[j]
            if total % self.modulus == 0:
                count += 1
        return count


@dataclass(frozen=True)
class DenseElement:
    """Square matrix over a cyclotomic field."""

    matrix: tuple[tuple[Cyclotomic, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __mul__(self, other: "DenseElement") -> "DenseElement":
        a, b = self.matrix, other.matrix
        r = len(a)
        rows = []
        for i in range(r):
            row = []
            for k in range(len(b[0])):
                acc = a[i][0] * b[0][k]
                for j in range(1, r):
                    acc = acc + a[i][j] * b[j][k]
                row.append(acc)
            rows.append(tuple(row))
        return DenseElement(tuple(rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, DenseElement) and all(
            x == y for ra, rb in zip(self.matrix, other.matrix) for x, y in zip(ra, rb)
        )

    def __hash__(self) -> int:
        return hash(tuple(x for row in self.matrix for x in row))

    def sort_key(self) -> tuple[Fraction, ...]:
        return tuple(c for row in self.matrix for x in row for c in x.coeffs)


# --------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class Family:
    """Either the imprimitive triple (d, e, r) or an exceptional name."""

    d: int | None = None
    e: int | None = None
    r: int | None = None
    name: str | None = None
    source: str | None = None

    @property
    def is_series(self) -> bool:
        return self.name is None

    def label(self) -> str:
        if self.is_series:
            return f"G({self.d * self.e},{self.e},{self.r})"
        return self.name


class ReflectionGroup:
    """Closed finite matrix group stored as a canonically sorted table."""

    def __init__(self, family: Family, rank: int, conductor: int, elements: list,
                 generators: Sequence[int], table: np.ndarray | None = None, identity: int = 0):
        self.family = family
        self.rank = rank
        self.conductor = conductor
        self.elements = elements
        self.generators = tuple(generators)
        self._table = table
        self._matrices: dict[int, tuple[tuple[Cyclotomic, ...], ...]] = {}
        if table is None:
            self._keys = {(el.perm, el.exps): i for i, el in enumerate(elements)}
            self._perms = [el.perm for el in elements]
            self._exps = [el.exps for el in elements]
            self._mod = conductor
        self.identity = identity
        self._inverses: list[int] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"ReflectionGroup({self.family.label()}, order={self.order})"

    @property
    def is_monomial(self) -> bool:
        return self._table is None

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        p, a = self._perms[i], self._exps[i]
        q, b = self._perms[j], self._exps[j]
        m = self._mod
        return self._keys[(tuple([p[k] for k in q]), tuple([(b[k] + a[q[k]]) % m for k in range(len(q))]))]

    def mul_many(self, xs: Sequence[int], j: int) -> list[int]:
        if self._table is not None:
            return self._table[np.asarray(xs, dtype=np.int64), j].tolist()
        return [self.mul(x, j) for x in xs]

    @property
    def inverses(self) -> list[int]:
        if self._inverses is None:
            if self._table is not None:
                rows, cols = np.nonzero(self._table == self.identity)
                inv = [0] * self.order
                for i, j in zip(rows.tolist(), cols.tolist()):
                    inv[i] = j
            else:
                inv = [self._keys[(el.inverse().perm, el.inverse().exps)] for el in self.elements]
            self._inverses = inv
        return self._inverses

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def conj(self, w: int, x: int) -> int:
        """w x w^-1."""
        return self.mul(self.mul(w, x), self.inv(w))

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inv(i), -k
        result, base = self.identity, i
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            k += 1
        return k

    def index_of(self, element) -> int:
        if self._table is None:
            return self._keys[(element.perm, element.exps)]
        for i in range(self.order):
            if self.dense(i) == element:
                return i
        raise KeyError(element)

    def matrix(self, i: int) -> tuple[tuple[Cyclotomic, ...], ...]:
        """Entries of element i as Cyclotomic values of the group conductor."""
        mat = self._matrices.get(i)
        if mat is None:
            el = self.elements[i]
            if isinstance(el, MonomialElement):
                mat = el.to_dense().matrix
            else:
                mat = el.matrix
            self._matrices[i] = mat
        return mat

    def dense(self, i: int) -> DenseElement:
        return DenseElement(self.matrix(i))

    @cached_property
    def fixed_dims(self) -> list[int]:
        """Dimension of the fixed space of every element."""
        if self._table is None:
            return [el.fixed_dim() for el in self.elements]
        return _dense_fixed_dims(self)

    @cached_property
    def reflections(self) -> list[int]:
        return [i for i, dim in enumerate(self.fixed_dims) if dim == self.rank - 1 and i != self.identity]

    def is_abelian_on(self, members: Iterable[int]) -> bool:
        ms = list(members)
        return all(self.mul(a, b) == self.mul(b, a) for a in ms for b in ms)


def _dense_fixed_dims(G: ReflectionGroup) -> list[int]:
    # only distinguishes identity (r), reflections (r-1) and the rest
    field_ = CyclotomicField(G.conductor)
    r = G.rank
    out = []
    for i in range(G.order):
        arr, den = G.elements[i]._arr, G.elements[i]._den
        a = arr - den * field_.identity(r)
        if not a.any():
            out.append(r)
            continue
        if r == 1:
            out.append(0)
            continue
        rank_one = True
        for i1, i2 in itertools.combinations(range(r), 2):
            for j1, j2 in itertools.combinations(range(r), 2):
                m = field_.scalar_mul(a[i1, j1], a[i2, j2]) - field_.scalar_mul(a[i1, j2], a[i2, j1])
                if m.any():
                    rank_one = False
                    break
            if not rank_one:
                break
        out.append(r - 1 if rank_one else -1)
    return out


class _StoredDense(DenseElement):
    """Dense element that also keeps its integer-array encoding."""

    def __init__(self, matrix, arr: np.ndarray, den: int):
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_arr", arr)
        object.__setattr__(self, "_den", den)

    def __eq__(self, other) -> bool:
        return DenseElement.__eq__(self, other)

    def __hash__(self) -> int:
        return DenseElement.__hash__(self)


# --------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    parent: ReflectionGroup = field(repr=False, compare=False)
    members: tuple[int, ...]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.member_set

    def issubset(self, other: "Subgroup") -> bool:
        return self.member_set <= other.member_set


def closure(G: ReflectionGroup, gens: Iterable[int], start: Iterable[int] | None = None) -> tuple[int, ...]:
    """Sorted member indices of the subgroup generated by gens (and start)."""
    gens = [g for g in dict.fromkeys(gens) if g != G.identity]
    if G._table is not None:
        return _table_closure(G, gens, start)
    seen = {G.identity}
    queue = deque([G.identity])
    if start is not None:
        for s in start:
            if s not in seen:
                seen.add(s)
                queue.append(s)
        gens = list(dict.fromkeys(list(gens) + [s for s in start if s != G.identity]))
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return tuple(sorted(seen))


def _table_closure(G: ReflectionGroup, gens: list[int], start: Iterable[int] | None) -> tuple[int, ...]:
    extra = [s for s in (start or ()) if s != G.identity]
    gens = list(dict.fromkeys(gens + extra))
    seen = np.zeros(G.order, dtype=bool)
    frontier = np.asarray([G.identity, *extra], dtype=np.int64)
    seen[frontier] = True
    cols = np.asarray(gens, dtype=np.int64)
    while frontier.size and cols.size:
        cand = np.unique(G._table[frontier][:, cols].ravel())
        frontier = cand[~seen[cand]]
        seen[frontier] = True
    return tuple(np.flatnonzero(seen).tolist())


def subgroup_generated(G: ReflectionGroup, gens: Iterable[int]) -> Subgroup:
    gens = tuple(sorted(set(gens)))
    return Subgroup(G, closure(G, gens), gens)


def small_generating_set(G: ReflectionGroup, members: Sequence[int]) -> tuple[int, ...]:
    """Greedy generating set: add members missing from the current closure."""
    gens: list[int] = []
    cur = {G.identity}
    # prefer elements of large order so few generators are needed
    for m in sorted(members, key=lambda x: (-G.element_order(x), x)) if len(members) <= 4096 else members:
        if m in cur:
            continue
        gens.append(m)
        cur = set(closure(G, gens))
        if len(cur) == len(members):
            break
    return tuple(sorted(gens))


def subgroup_from_members(G: ReflectionGroup, members: Iterable[int]) -> Subgroup:
    members = tuple(sorted(set(members)))
    return Subgroup(G, members, small_generating_set(G, members))


def full_subgroup(G: ReflectionGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)), G.generators)


def trivial_subgroup(G: ReflectionGroup) -> Subgroup:
    return Subgroup(G, (G.identity,), ())


def centralizer(G: ReflectionGroup, g: int, within: Subgroup | None = None) -> Subgroup:
    """{w : wg = gw}, optionally restricted to a subgroup."""
    pool = range(G.order) if within is None else within.members
    if G._table is not None:
        idx = np.asarray(list(pool), dtype=np.int64)
        keep = idx[G._table[idx, g] == G._table[g, idx]]
        members = keep.tolist()
    else:
        members = [w for w in pool if G.mul(w, g) == G.mul(g, w)]
    return subgroup_from_members(G, members)


def conjugate_subgroup(G: ReflectionGroup, S: Subgroup, w: int) -> Subgroup:
    """w S w^-1."""
    return Subgroup(G, tuple(sorted(G.conj(w, x) for x in S.members)),
                    tuple(sorted(G.conj(w, x) for x in S.generators)))


# --------------------------------------------------------------------------
# imprimitive series


def gde_order(d: int, e: int, r: int) -> int:
    return (d * e) ** r * factorial(r) // e


def build_gde(d: int, e: int, r: int, bound: int = DEFAULT_ORDER_BOUND) -> ReflectionGroup:
    """G(de, e, r): monomial matrices over mu_de whose entry product lies in mu_d."""
    if min(d, e, r) < 1:
        raise ValueError("d, e and r must be positive")
    size = gde_order(d, e, r)
    if size > bound:
        raise GroupTooLarge(f"G({d * e},{e},{r}) has order {size} > bound {bound}")
    m = d * e
    elements = [
        MonomialElement(perm, exps, m)
        for perm in itertools.permutations(range(r))
        for exps in itertools.product(range(m), repeat=r)
        if sum(exps) % e == 0
    ]
    assert len(elements) == size
    G = ReflectionGroup(Family(d=d, e=e, r=r), r, m, elements, ())
    G.generators = _gde_generators(G, d, e, r)
    return G


def _gde_generators(G: ReflectionGroup, d: int, e: int, r: int) -> tuple[int, ...]:
    m = d * e
    ident = tuple(range(r))
    gens = []
    if d > 1:
        gens.append(G.index_of(MonomialElement(ident, (e,) + (0,) * (r - 1), m)))
    for i in range(r - 1):
        perm = list(ident)
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(G.index_of(MonomialElement(tuple(perm), (0,) * r, m)))
    if r >= 2 and e > 1:
        perm = (1, 0) + ident[2:]
        gens.append(G.index_of(MonomialElement(perm, (1, m - 1) + (0,) * (r - 2), m)))
    return tuple(sorted(set(gens) - {G.identity}))


def pi(element: MonomialElement) -> Cyclotomic:
    """Product of the nonzero coefficients: zeta_m^(sum of exponents)."""
    return Cyclotomic.zeta(element.modulus, sum(element.exps))


# --------------------------------------------------------------------------
# exceptional groups


@dataclass
class ExceptionalRecord:
    name: str
    declared_order: int
    conductor: int
    rank: int
    generators: list[list[list[Cyclotomic]]]
    source: str | None = None

    @classmethod
    def from_json(cls, obj: dict, source: str | None = None) -> "ExceptionalRecord":
        n = int(obj["conductor"])
        gens = [[[parse_coeffs(n, entry) for entry in row] for row in mat] for mat in obj["generators"]]
        return cls(obj["name"], int(obj["declared_order"]), n, int(obj["rank"]), gens, source)

    def to_json(self) -> dict:
        n = self.conductor
        return {
            "name": self.name,
            "declared_order": self.declared_order,
            "conductor": n,
            "rank": self.rank,
            "generators": [
                [[[str(c) for c in x.embed(n).coeffs] for x in row] for row in mat]
                for mat in self.generators
            ],
        }


def build_from_matrices(record: ExceptionalRecord, bound: int = DEFAULT_ORDER_BOUND) -> ReflectionGroup:
    """Breadth-first closure of the generator matrices."""
    if record.declared_order > bound:
        raise GroupTooLarge(f"{record.name}: declared order {record.declared_order} > bound {bound}")
    fld = CyclotomicField(record.conductor)
    r = record.rank
    limit = record.declared_order
    gens = [fld.normalize(*fld.encode(mat)) for mat in record.generators]

    def key(arr, den):
        return den, arr.tobytes()

    ident = fld.identity(r)
    arrays = [(ident, 1)]
    index = {key(ident, 1): 0}
    right: list[list[int]] = [[] for _ in gens]
    parents: list[tuple[int, int]] = [(-1, -1)]
    x = 0
    while x < len(arrays):
        arr, den = arrays[x]
        for s, (garr, gden) in enumerate(gens):
            prod, pden = fld.normalize(fld.matmul(arr, garr), den * gden)
            k = key(prod, pden)
            y = index.get(k)
            if y is None:
                y = len(arrays)
                if y >= limit:
                    raise ClosureMismatch(f"{record.name}: closure exceeds declared order {limit}")
                index[k] = y
                arrays.append((prod, pden))
                parents.append((x, s))
            right[s].append(y)
        x += 1
    n = len(arrays)
    if n != record.declared_order:
        raise ClosureMismatch(f"{record.name}: closure has order {n}, declared {record.declared_order}")

    # right-regular permutations R_y[z] = z*y, built along the BFS tree
    rmaps = [np.asarray(rs, dtype=np.int32) for rs in right]
    regular = np.empty((n, n), dtype=np.int32)
    regular[0] = np.arange(n, dtype=np.int32)
    for y in range(1, n):
        p, s = parents[y]
        regular[y] = rmaps[s][regular[p]]

    keys = [tuple(Fraction(int(v), den) for v in arr.ravel()) for arr, den in arrays]
    order = sorted(range(n), key=keys.__getitem__)
    new_of_old = np.empty(n, dtype=np.int32)
    new_of_old[np.asarray(order)] = np.arange(n, dtype=np.int32)
    # table[i, j] = index of elements[i] * elements[j]
    old = np.asarray(order)
    table = new_of_old[regular[old][:, old].T]
    elements = []
    for o in order:
        arr, den = arrays[o]
        elements.append(_StoredDense(fld.decode(arr, den), arr, den))
    gen_idx = []
    for garr, gden in gens:
        gen_idx.append(int(new_of_old[index[key(garr, gden)]]))
    fam = Family(name=record.name, source=record.source)
    return ReflectionGroup(fam, r, record.conductor, elements, sorted(set(gen_idx)), table=table,
                           identity=int(new_of_old[0]))


def default_data_dir() -> Path:
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    return Path(__file__).parent / "data" / "exceptional"


def load_record(name: str, data_dir: Path | str | None = None) -> ExceptionalRecord:
    path = Path(data_dir or default_data_dir()) / f"{name}.json"
    with open(path) as fh:
        return ExceptionalRecord.from_json(json.load(fh), source=str(path))


def available_exceptionals(data_dir: Path | str | None = None) -> list[str]:
    names = [p.stem for p in Path(data_dir or default_data_dir()).glob("G*.json")]
    return sorted(names, key=lambda s: int(s[1:]))


def load_exceptional(name: str, data_dir: Path | str | None = None,
                     bound: int = DEFAULT_ORDER_BOUND) -> ReflectionGroup:
    return build_from_matrices(load_record(name, data_dir), bound)
