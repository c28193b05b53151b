"""Finite invariants attached to braid subgroups.

Nothing here builds a braid group.  Each function returns the integer that
the corresponding braid-theoretic statement reduces to:

* ``braid_abelianization_rank(G, C)`` is the rank of the free abelian group
  p^-1(C)^ab, one generator per C-orbit of hyperplanes.
* ``stabilizer_braid_rank(G, H)`` is the rank of p^-1(N_H)^ab when N_H and C_H
  have the same orbits on all hyperplanes: one lift realising the
  ramification, one generator per C_H-class of hyperplanes commuting with H
  (other than H), one per C_H-class of non-commuting hyperplanes.
* ``kappa(G)`` is the order of the extension of W by P/[P,P]: the lcm of the
  character orders f over the W-classes of hyperplanes.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .abelian import is_reflection_subgroup
from .groups import ReflectionGroup, Subgroup, full_subgroup
from .reflections import Arrangement, Hyperplane, HyperplaneRecord, get_arrangement


class NotReflectionSubgroup(ValueError):
    pass


class OrbitInconsistent(RuntimeError):
    pass


def braid_abelianization_rank(G: ReflectionGroup, C: Subgroup, arr: Arrangement | None = None) -> int:
    """|Hyp / C| for a reflection subgroup C."""
    if not is_reflection_subgroup(G, C):
        raise NotReflectionSubgroup(f"subgroup of order {C.order} is not generated by reflections")
    arr = arr or get_arrangement(G)
    return len(arr.orbits(C))


@dataclass(frozen=True)
class StabilizerRank:
    rank: int | None
    full_orbit_criterion: bool
    commuting_classes: int
    noncommuting_classes: int

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "full_orbit_criterion": self.full_orbit_criterion,
            "commuting_classes": self.commuting_classes,
            "noncommuting_classes": self.noncommuting_classes,
        }


def stabilizer_braid_rank(G: ReflectionGroup, rec: HyperplaneRecord, arr: Arrangement | None = None) -> StabilizerRank:
    arr = arr or get_arrangement(G)
    rec = arr.complete(rec.index)
    N, C = rec.stabilizer, rec.parabolic
    everything = list(range(len(arr)))
    c_orbits = arr.orbits(C, everything)
    criterion = arr.orbits(N, everything) == c_orbits
    commuting = sorted(set(rec.commuting) - {rec.index})
    others = sorted(set(everything) - set(rec.commuting))
    n_comm = len(arr.orbits(C, commuting))
    n_other = len(arr.orbits(C, others))
    rank = None
    if criterion:
        rank = 1 + n_comm + n_other
        # {H} is a C_H-orbit of its own, so the same count is |Hyp / C_H|
        if rank != len(c_orbits):
            raise RuntimeError(f"rank {rank} disagrees with |Hyp/C_H| = {len(c_orbits)}")
    return StabilizerRank(rank, criterion, n_comm, n_other)


@dataclass(frozen=True)
class ExtensionReport:
    orbits: tuple[tuple[Hyperplane, int], ...]
    kappa: int

    def to_json(self) -> dict:
        return {
            "orbits": [{"representative": str(h), "f": f} for h, f in self.orbits],
            "kappa": self.kappa,
        }


def kappa(G: ReflectionGroup, arr: Arrangement | None = None) -> ExtensionReport:
    arr = arr or get_arrangement(G)
    arr.complete_all()
    rows = []
    for orbit in arr.orbits(full_subgroup(G)):
        fs = {arr.records[h].f for h in orbit}
        if len(fs) != 1:
            raise OrbitInconsistent(f"f varies along the orbit of {arr.records[orbit[0]].label}: {sorted(fs)}")
        rows.append((arr.records[orbit[0]].hyperplane, fs.pop()))
    return ExtensionReport(tuple(rows), lcm(*(f for _, f in rows)) if rows else 1)


def closed_form_kappa(d: int, e: int, r: int) -> int | None:
    """The closed form published for kappa(G(de,e,r)); None where none is stated."""
    if r >= 3:
        return 2 * d * e if (d * e) % 2 else d * e
    if r == 2 and d != 1:
        return d * e
    return None


def closed_form_disagrees(d: int, e: int, r: int, value: int) -> bool:
    """True at grid points where the published closed form differs from the lcm value."""
    expected = closed_form_kappa(d, e, r)
    return expected is not None and expected != value
