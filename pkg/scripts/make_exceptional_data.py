"""Generate generator-matrix records for the exceptional groups G4..G28.

Rank 2: the three maximal groups G7, G11, G19 are closed from binary
polyhedral quaternion groups times scalars; every other rank-2 group is
found as a reflection subgroup and identified by its order and the sorted
list of e_H over its hyperplane classes.

Rank 3 and 4: reflections are written in a basis of roots from a
Cartan-like matrix, s_i(a_j) = a_j - C[i][j] a_i with C[i][i] = 1 - zeta_i.
G27 is found by scanning edge labels and the cycle product.

Every record is re-closed and checked against its declared order before
it is written.

    python scripts/make_exceptional_data.py [--out DIR] [--only G4,G25]
"""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
from pathlib import Path

import numpy as np

from crgkit.cyclo import Cyclotomic
from crgkit.groups import (ClosureMismatch, ExceptionalRecord, build_from_matrices,
                           closure, default_data_dir)
from crgkit.reflections import get_arrangement

log = logging.getLogger("make_exceptional_data")

Z = Cyclotomic.zeta


def q(n: int, x) -> Cyclotomic:
    return Cyclotomic.rational(x, n) if not isinstance(x, Cyclotomic) else x.embed(n)


# --------------------------------------------------------------------------
# rank 2


def quaternion_matrix(n: int, a, b, c, d) -> list[list[Cyclotomic]]:
    i = Z(n, n // 4)
    a, b, c, d = (q(n, x) for x in (a, b, c, d))
    return [[a + b * i, c + d * i], [-c + d * i, a - b * i]]


def ambient_record(name: str) -> ExceptionalRecord:
    half = Cyclotomic.rational("1/2")
    if name == "G7":
        n, order = 12, 144
        gens = [quaternion_matrix(n, 0, 1, 0, 0), quaternion_matrix(n, half, half, half, half)]
    elif name == "G11":
        n, order = 24, 576
        root2_inv = (Z(8, 1) + Z(8, 7)) * half
        gens = [quaternion_matrix(n, root2_inv, root2_inv, 0, 0), quaternion_matrix(n, half, half, half, half)]
    elif name == "G19":
        n, order = 60, 3600
        phi = 1 + Z(5, 1) + Z(5, 4)
        gens = [quaternion_matrix(n, half, half, half, half),
                quaternion_matrix(n, phi * half, (phi - 1) * half, half, 0)]
    else:
        raise KeyError(name)
    scalar = Z(n, 1)
    gens.append([[scalar, q(n, 0)], [q(n, 0), scalar]])
    return ExceptionalRecord(name, order, n, 2, gens)


# (order, sorted e_H per class) -> Shephard-Todd number
RANK2_SIGNATURES = {
    (24, (3,)): "G4", (72, (3, 3)): "G5", (48, (2, 3)): "G6", (144, (2, 3, 3)): "G7",
    (96, (4,)): "G8", (192, (2, 4)): "G9", (288, (3, 4)): "G10", (576, (2, 3, 4)): "G11",
    (48, (2,)): "G12", (96, (2, 2)): "G13", (144, (2, 3)): "G14", (288, (2, 2, 3)): "G15",
    (600, (5,)): "G16", (1200, (2, 5)): "G17", (1800, (3, 5)): "G18", (3600, (2, 3, 5)): "G19",
    (360, (3,)): "G20", (720, (2, 3)): "G21", (240, (2,)): "G22",
}
AMBIENT_OF = {**{f"G{k}": "G7" for k in range(4, 8)},
              **{f"G{k}": "G11" for k in range(8, 16)},
              **{f"G{k}": "G19" for k in range(16, 23)}}


def signature(G, members: tuple[int, ...], gens: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    arr = get_arrangement(G)
    mset = set(members)
    count: dict[int, int] = {}
    for s in G.reflections:
        if s in mset:
            h = arr.hyp_of[s]
            count[h] = count.get(h, 0) + 1
    # S-orbits on its own hyperplanes
    seen: set[int] = set()
    es = []
    for h in sorted(count):
        if h in seen:
            continue
        orbit, stack = {h}, [h]
        while stack:
            x = stack.pop()
            for g in gens:
                y = arr.act(g, x)
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        seen |= orbit
        es.append(count[h] + 1)
    return len(members), tuple(sorted(es))


def rank2_search(ambient: str, wanted: set[str]) -> dict[str, tuple]:
    rec = ambient_record(ambient)
    G = build_from_matrices(rec)
    arr = get_arrangement(G)
    pieces = []
    for h in arr.records:
        s = h.distinguished
        for a in range(1, h.e):
            if h.e % a == 0:
                pieces.append(G.power(s, a))
    found: dict[str, tuple] = {}
    seen_members: set[tuple] = set()
    layer = [((), (G.identity,))]
    for depth in range(3):
        nxt = []
        for gens, _ in layer:
            for p in pieces:
                if gens and p <= gens[-1]:
                    continue
                g2 = gens + (p,)
                members = closure(G, g2)
                if members in seen_members:
                    continue
                seen_members.add(members)
                name = RANK2_SIGNATURES.get(signature(G, members, g2))
                if name in wanted and name not in found:
                    found[name] = (G, g2)
                    log.info("%s found inside %s with %d generators", name, ambient, len(g2))
                nxt.append((g2, members))
        if wanted <= set(found):
            break
        layer = nxt
    return found


def rank2_records(names: list[str]) -> list[ExceptionalRecord]:
    out = []
    by_ambient: dict[str, set[str]] = {}
    for nm in names:
        by_ambient.setdefault(AMBIENT_OF[nm], set()).add(nm)
    for amb, wanted in sorted(by_ambient.items()):
        found = rank2_search(amb, wanted)
        missing = wanted - set(found)
        if missing:
            raise RuntimeError(f"not found inside {amb}: {sorted(missing)}")
        for nm in sorted(wanted, key=lambda s: int(s[1:])):
            G, gens = found[nm]
            order = closure(G, gens).__len__()
            mats = [[list(row) for row in G.matrix(g)] for g in gens]
            out.append(ExceptionalRecord(nm, order, G.conductor, 2, mats))
    return out


# --------------------------------------------------------------------------
# rank 3 and 4 from root bases


def root_basis_generators(n: int, cartan: list[list], zetas: list[Cyclotomic]) -> list[list[list[Cyclotomic]]]:
    r = len(cartan)
    gens = []
    for i in range(r):
        mat = [[q(n, 1 if a == b else 0) for b in range(r)] for a in range(r)]
        for j in range(r):
            cij = (1 - zetas[i]) if i == j else q(n, cartan[i][j])
            mat[i][j] = mat[i][j] - cij
        gens.append(mat)
    return gens


def try_order(name: str, n: int, r: int, gens, order: int) -> bool:
    try:
        build_from_matrices(ExceptionalRecord(name, order, n, r, gens))
    except ClosureMismatch:
        return False
    return True


def coxeter_like(name: str) -> ExceptionalRecord:
    if name == "G23":
        n = 5
        phi = 1 + Z(5, 1) + Z(5, 4)
        cartan = [[2, -phi, 0], [-phi, 2, -1], [0, -1, 2]]
        return ExceptionalRecord(name, 120, n, 3, root_basis_generators(n, cartan, [q(n, -1)] * 3))
    if name == "G28":
        n = 1
        cartan = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
        return ExceptionalRecord(name, 1152, n, 4, root_basis_generators(n, cartan, [q(n, -1)] * 4))
    raise KeyError(name)


def g24_record() -> ExceptionalRecord:
    n = 7
    b = Z(7, 1) + Z(7, 2) + Z(7, 4)
    for bb in (b, b.conjugate(), -b, -b.conjugate()):
        cartan = [[2, 1, bb], [1, 2, 1], [bb.conjugate(), 1, 2]]
        gens = root_basis_generators(n, cartan, [q(n, -1)] * 3)
        if try_order("G24", n, 3, gens, 336):
            return ExceptionalRecord("G24", 336, n, 3, gens)
    raise RuntimeError("no G24 candidate closed to order 336")


def g25_g26_record(name: str) -> ExceptionalRecord:
    n = 3
    w = Z(3, 1)
    p_g4 = -w          # tr(st) = w for a G4-type pair of order-3 reflections
    p_b = 1 - w        # tr(st) = 0 for an order-2 / order-3 pair generating G(3,1,2)
    if name == "G25":
        cartan = [[None, 1, 0], [p_g4, None, 1], [0, p_g4, None]]
        zetas, order = [w, w, w], 648
    else:
        cartan = [[None, 1, 0], [p_b, None, 1], [0, p_g4, None]]
        zetas, order = [q(n, -1), w, w], 1296
    gens = root_basis_generators(n, cartan, zetas)
    if not try_order(name, n, 3, gens, order):
        raise RuntimeError(f"{name} candidate did not close to order {order}")
    return ExceptionalRecord(name, order, n, 3, gens)


def _element_order(n: int, mats, limit: int) -> int | None:
    from crgkit.cyclo import CyclotomicField
    fld = CyclotomicField(n)
    arrs = [fld.normalize(*fld.encode(m)) for m in mats]
    arr, den = arrs[0]
    for a2, d2 in arrs[1:]:
        arr, den = fld.normalize(fld.matmul(arr, a2), den * d2)
    ident = fld.identity(len(mats[0]))
    x, dx = arr, den
    for k in range(1, limit + 1):
        if dx == 1 and np.array_equal(x, ident):
            return k
        x, dx = fld.normalize(fld.matmul(x, arr), dx * den)
    return None


def g27_record() -> ExceptionalRecord:
    n = 60
    phi = 1 + Z(5, 1) + Z(5, 4)
    # p = 4 cos^2(pi k / m) for order-2 reflections generating a dihedral group of order 2m
    edge_values = {2: [q(n, 0)], 3: [q(n, 1)], 4: [q(n, 2)], 5: [phi * phi, (phi - 1) * (phi - 1)]}
    for m12, m23, m31 in itertools.combinations_with_replacement((3, 4, 5), 3):
        for p12, p23, p31 in itertools.product(edge_values[m12], edge_values[m23], edge_values[m31]):
            prod = p12 * p23 * p31
            roots = [x for x in (q(n, 1), phi, phi - 1, 2 * phi, 2 * (phi - 1), q(n, 2), phi * phi)
                     if x * x == prod]
            for root in roots:
                for k in range(n):
                    T = root * Z(n, k)
                    cartan = [[2, 1, T], [p12, 2, 1], [p31 / T, p23, 2]]
                    gens = root_basis_generators(n, cartan, [q(n, -1)] * 3)
                    if _element_order(n, gens, 60) is None:
                        continue
                    if try_order("G27", n, 3, gens, 2160):
                        log.info("G27 from edges %s, cycle product index %d", (m12, m23, m31), k)
                        return ExceptionalRecord("G27", 2160, n, 3, gens)
    raise RuntimeError("no G27 candidate closed to order 2160")


# --------------------------------------------------------------------------


ALL = [f"G{k}" for k in range(4, 29)]


def make(name_list: list[str]) -> list[ExceptionalRecord]:
    rank2 = [nm for nm in name_list if int(nm[1:]) <= 22]
    out = rank2_records(rank2) if rank2 else []
    for nm in name_list:
        k = int(nm[1:])
        if k in (23, 28):
            out.append(coxeter_like(nm))
        elif k == 24:
            out.append(g24_record())
        elif k in (25, 26):
            out.append(g25_g26_record(nm))
        elif k == 27:
            out.append(g27_record())
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=default_data_dir())
    ap.add_argument("--only", default=",".join(ALL))
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    args.out.mkdir(parents=True, exist_ok=True)
    names = [s.strip() for s in args.only.split(",") if s.strip()]
    for rec in make(names):
        G = build_from_matrices(rec)
        assert G.order == rec.declared_order
        path = args.out / f"{rec.name}.json"
        path.write_text(json.dumps(rec.to_json(), indent=1) + "\n")
        log.info("wrote %s (order %d, conductor %d)", path, G.order, rec.conductor)
    return 0


if __name__ == "__main__":
    sys.exit(main())
