"""Reflections, hyperplanes and the per-hyperplane subgroups.

For a hyperplane H with distinguished reflection s_H the module computes
the fixator W_H, the line D = im(s_H - 1), the stabilizer N_H (the
centralizer of s_H), the parabolic C_H fixing D pointwise, the order f_H
of the eigenvalue character of N_H on D, and the commuting hyperplanes.

Group elements act on hyperplanes through their reflections:
w(H) is the hyperplane of w s_H w^-1.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .cyclo import Cyclotomic, as_root_of_unity
from .groups import (
    ReflectionGroup,
    Subgroup,
    centralizer,
    conjugate_subgroup,
    full_subgroup,
    small_generating_set,
    subgroup_from_members,
)

Vector = tuple[Cyclotomic, ...]


class NotCyclicFixator(RuntimeError):
    pass


class EigenvalueNotRootOfUnity(RuntimeError):
    pass


class OrbitEscape(ValueError):
    pass


# --------------------------------------------------------------------------
# small exact linear algebra


def mat_vec(mat: Sequence[Sequence[Cyclotomic]], v: Vector) -> Vector:
    out = []
    for row in mat:
        acc = None
        for a, x in zip(row, v):
            if a.is_zero() or x.is_zero():
                continue
            t = a * x
            acc = t if acc is None else acc + t
        out.append(acc if acc is not None else Cyclotomic.zero(row[0].conductor))
    return tuple(out)


def vec_mat(v: Vector, mat: Sequence[Sequence[Cyclotomic]]) -> Vector:
    cols = list(zip(*mat))
    return tuple(
        sum((x * a for x, a in zip(v, col) if not x.is_zero() and not a.is_zero()),
            Cyclotomic.zero(col[0].conductor))
        for col in cols
    )


def pairing(alpha: Vector, v: Vector) -> Cyclotomic:
    acc = Cyclotomic.zero(alpha[0].conductor)
    for a, x in zip(alpha, v):
        if not a.is_zero() and not x.is_zero():
            acc = acc + a * x
    return acc


def first_nonzero(v: Vector) -> int:
    for k, x in enumerate(v):
        if not x.is_zero():
            return k
    raise ValueError("zero vector")


def projective_normalize(v: Vector) -> Vector:
    """Scale so the first nonzero coordinate is 1."""
    k = first_nonzero(v)
    if v[k] == 1:
        return tuple(v)
    inv = v[k].inverse()
    return tuple(x if x.is_zero() else x * inv for x in v)


def vector_key(v: Vector, conductor: int) -> tuple[Fraction, ...]:
    return tuple(c for x in v for c in x.embed(conductor).coeffs)


def minus_identity(mat) -> list[list[Cyclotomic]]:
    return [[x - 1 if i == j else x for j, x in enumerate(row)] for i, row in enumerate(mat)]


# --------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class Hyperplane:
    """Kernel of a linear form, stored by its normalized coefficient vector."""

    normal: Vector = field(compare=False)
    key: tuple[Fraction, ...] = field(repr=False)
    label: str | None = field(default=None, compare=False)

    def __lt__(self, other: "Hyperplane") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return self.label or "[" + ", ".join(str(x) for x in self.normal) + "]"


@dataclass
class HyperplaneRecord:
    index: int
    hyperplane: Hyperplane
    fixator: Subgroup
    e: int
    distinguished: int
    reflections: tuple[int, ...]
    line: Vector
    stabilizer: Subgroup | None = None
    parabolic: Subgroup | None = None
    f: int | None = None
    ramification: int | None = None
    commuting: frozenset[int] | None = None
    witness: int | None = None
    # eigenvalue of each stabilizer member on the line, as a power of zeta_N
    eigen_modulus: int | None = None
    eigen_exponent: dict[int, int] | None = field(default=None, repr=False)

    @property
    def label(self) -> str:
        return str(self.hyperplane)

    @property
    def complete(self) -> bool:
        return self.f is not None and self.commuting is not None


# --------------------------------------------------------------------------
# labels for the imprimitive series


def _series_label(G: ReflectionGroup, normal: Vector) -> str | None:
    if not G.family.is_series:
        return None
    m = G.conductor
    nz = [k for k, x in enumerate(normal) if not x.is_zero()]
    if len(nz) == 1:
        return f"H{nz[0] + 1}"
    if len(nz) == 2:
        i, j = nz
        hit = as_root_of_unity(-normal[j])
        if hit is not None:
            big, k = hit
            if (k * m) % big == 0:
                return f"H({i + 1},{j + 1},z^{k * m // big})"
    return None


# --------------------------------------------------------------------------
# the arrangement of a group


class Arrangement:
    """Hyperplanes of a reflection group with cached per-hyperplane data."""

    def __init__(self, G: ReflectionGroup):
        self.G = G
        self._act_cache: dict[tuple[int, int], int] = {}
        self.records: list[HyperplaneRecord] = []
        self.hyp_of: dict[int, int] = {}
        self._build()

    def __len__(self) -> int:
        return len(self.records)

    def _build(self) -> None:
        G = self.G
        n = G.conductor
        groups: dict[tuple, list[int]] = {}
        normals: dict[tuple, Vector] = {}
        lines: dict[int, Vector] = {}
        for s in G.reflections:
            a = minus_identity(G.matrix(s))
            row = next(tuple(r) for r in a if any(not x.is_zero() for x in r))
            alpha = projective_normalize(row)
            key = vector_key(alpha, n)
            groups.setdefault(key, []).append(s)
            normals[key] = alpha
            col = next(tuple(c) for c in zip(*a) if any(not x.is_zero() for x in c))
            lines[s] = projective_normalize(col)
        for idx, key in enumerate(sorted(groups)):
            refls = tuple(sorted(groups[key]))
            for s in refls:
                self.hyp_of[s] = idx
            hyp = Hyperplane(normals[key], key, _series_label(G, normals[key]))
            line = lines[refls[0]]
            k = first_nonzero(line)
            e = len(refls) + 1
            distinguished = None
            for s in refls:
                lam = mat_vec(G.matrix(s), line)[k]
                hit = as_root_of_unity(lam)
                if hit is None:
                    raise EigenvalueNotRootOfUnity(f"reflection {s} has eigenvalue {lam}")
                big, ex = hit
                if ex * e == big:
                    distinguished = s
            members = {G.identity, *refls}
            if distinguished is None:
                raise NotCyclicFixator(f"no reflection of determinant exp(2i pi/{e}) for {hyp}")
            powers = {G.power(distinguished, j) for j in range(e)}
            if powers != members:
                raise NotCyclicFixator(f"fixator of {hyp} is not cyclic of order {e}")
            fix = Subgroup(G, tuple(sorted(members)), (distinguished,))
            self.records.append(HyperplaneRecord(idx, hyp, fix, e, distinguished, refls, line))

    # actions --------------------------------------------------------------
    def act(self, w: int, h: int) -> int:
        """Index of w(H_h)."""
        key = (w, h)
        hit = self._act_cache.get(key)
        if hit is None:
            G = self.G
            hit = self.hyp_of[G.conj(w, self.records[h].distinguished)]
            self._act_cache[key] = hit
        return hit

    def orbits(self, S: Subgroup, hyps: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        """Orbits of S on a stable set of hyperplane indices."""
        pool = set(range(len(self.records)) if hyps is None else hyps)
        gens = S.generators
        seen: set[int] = set()
        out = []
        for h in sorted(pool):
            if h in seen:
                continue
            orbit = {h}
            queue = deque([h])
            while queue:
                x = queue.popleft()
                for g in gens:
                    y = self.act(g, x)
                    if y not in pool:
                        raise OrbitEscape(f"hyperplane {y} leaves the given set")
                    if y not in orbit:
                        orbit.add(y)
                        queue.append(y)
            seen |= orbit
            out.append(tuple(sorted(orbit)))
        return out

    def transversal(self) -> dict[int, tuple[int, int]]:
        """For every hyperplane h: (representative, w) with w(rep) = h."""
        G = self.G
        out: dict[int, tuple[int, int]] = {}
        for orbit in self.orbits(full_subgroup(G)):
            rep = orbit[0]
            out[rep] = (rep, G.identity)
            queue = deque([rep])
            while queue:
                x = queue.popleft()
                w = out[x][1]
                for g in G.generators:
                    y = self.act(g, x)
                    if y not in out:
                        out[y] = (rep, G.mul(g, w))
                        queue.append(y)
        return out

    # per-hyperplane data ---------------------------------------------------
    def complete(self, h: int) -> HyperplaneRecord:
        rec = self.records[h]
        if rec.f is None:
            stabilizer_data(self.G, rec, self)
        if rec.commuting is None:
            rec.commuting = frozenset(commuting_set(self.G, rec, self))
        return rec

    def complete_all(self) -> list[HyperplaneRecord]:
        """Complete every record: orbit representatives directly, others by conjugation."""
        G = self.G
        trans = self.transversal()
        for h in sorted(trans):
            rep, w = trans[h]
            if h == rep:
                self.complete(h)
        for h in sorted(trans):
            rep, w = trans[h]
            if h != rep and not self.records[h].complete:
                transport_record(self, self.records[rep], w, self.records[h])
        return self.records


def get_arrangement(G: ReflectionGroup) -> Arrangement:
    arr = getattr(G, "_arrangement", None)
    if arr is None:
        arr = Arrangement(G)
        G._arrangement = arr
    return arr


def find_hyperplanes(G: ReflectionGroup) -> list[HyperplaneRecord]:
    return get_arrangement(G).records


def eigenvalue_on_line(G: ReflectionGroup, w: int, line: Vector) -> tuple[int, int]:
    """(N, k) with w u = zeta_N^k u for the line vector u; raises if u is not an eigenvector."""
    image = mat_vec(G.matrix(w), line)
    k = first_nonzero(line)
    lam = image[k]
    if any(im != lam * x for im, x in zip(image, line)):
        raise ValueError(f"element {w} does not stabilise the line")
    hit = as_root_of_unity(lam)
    if hit is None:
        raise EigenvalueNotRootOfUnity(f"eigenvalue {lam} of element {w}")
    return hit


def stabilizer_data(G: ReflectionGroup, rec: HyperplaneRecord, arr: Arrangement | None = None) -> HyperplaneRecord:
    """Fill N_H, C_H, f_H, d_H and a witness realising the ramification."""
    N = centralizer(G, rec.distinguished)
    modulus = None
    gen_exp: dict[int, int] = {}
    for g in N.generators:
        big, k = eigenvalue_on_line(G, g, rec.line)
        modulus = big
        gen_exp[g] = k
    if modulus is None:
        modulus = 2 * G.conductor if G.conductor % 2 else G.conductor
    # propagate the character along a spanning tree of N
    exps = {G.identity: 0}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g in N.generators:
            y = G.mul(x, g)
            if y not in exps:
                exps[y] = (exps[x] + gen_exp[g]) % modulus
                queue.append(y)
    if len(exps) != N.order:
        raise RuntimeError("stabilizer generators do not generate the stabilizer")
    g_all = modulus
    for k in gen_exp.values():
        g_all = gcd(g_all, k)
    f = modulus // g_all
    kernel = [x for x, k in exps.items() if k == 0]
    C = subgroup_from_members(G, kernel)
    target = modulus // f
    witness = min(x for x, k in exps.items() if k == target % modulus) if f > 1 else G.identity
    rec.stabilizer = N
    rec.parabolic = C
    rec.f = f
    if f % rec.e:
        raise RuntimeError(f"e_H={rec.e} does not divide f_H={f}")
    rec.ramification = f // rec.e
    rec.witness = witness
    rec.eigen_modulus = modulus
    rec.eigen_exponent = exps
    return rec


def transport_record(arr: Arrangement, src: HyperplaneRecord, w: int, dst: HyperplaneRecord) -> HyperplaneRecord:
    """Fill dst = w(src) by conjugating the subgroups of a completed record."""
    G = arr.G
    dst.stabilizer = conjugate_subgroup(G, src.stabilizer, w)
    dst.parabolic = conjugate_subgroup(G, src.parabolic, w)
    dst.f = src.f
    dst.ramification = src.ramification
    dst.witness = G.conj(w, src.witness)
    dst.eigen_modulus = src.eigen_modulus
    dst.eigen_exponent = {G.conj(w, x): k for x, k in src.eigen_exponent.items()}
    dst.commuting = frozenset(arr.act(w, h) for h in src.commuting)
    return dst


def commuting_set(G: ReflectionGroup, rec: HyperplaneRecord, arr: Arrangement | None = None) -> set[int]:
    """Indices of hyperplanes H' with s_H s_H' = s_H' s_H (always contains H)."""
    arr = arr or get_arrangement(G)
    s = rec.distinguished
    out = set()
    for other in arr.records:
        t = other.distinguished
        if G.mul(s, t) == G.mul(t, s):
            out.add(other.index)
    return out


def commuting_characterizations(arr: Arrangement, h: int, k: int) -> tuple[bool, bool, bool, bool]:
    """The four equivalent forms: distinguished reflections commute; H = H' or D in H';
    every pair of reflections commutes; some pair commutes."""
    G = arr.G
    a, b = arr.records[h], arr.records[k]
    s, t = a.distinguished, b.distinguished
    first = G.mul(s, t) == G.mul(t, s)
    second = h == k or pairing(b.hyperplane.normal, a.line).is_zero()
    pairs = [G.mul(x, y) == G.mul(y, x) for x in a.reflections for y in b.reflections]
    return first, second, all(pairs), any(pairs)


def orbit_decomposition(S: Subgroup, hyps: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    return get_arrangement(S.parent).orbits(S, hyps)


def line_stabilizer(G: ReflectionGroup, line: Vector) -> list[int]:
    """Brute-force {w : w maps the line into itself}."""
    out = []
    for w in range(G.order):
        image = mat_vec(G.matrix(w), line)
        k = first_nonzero(line)
        lam = image[k]
        if all(im == lam * x for im, x in zip(image, line)):
            out.append(w)
    return out


def line_fixator(G: ReflectionGroup, line: Vector) -> list[int]:
    """Brute-force {w : w fixes the line pointwise}."""
    return [w for w in range(G.order) if mat_vec(G.matrix(w), line) == tuple(line)]
