"""Tables built from a group, and their json / csv / markdown renderings."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .abelian import abelian_invariants, exactness_report, orbit_criteria
from .braid import closed_form_disagrees, closed_form_kappa, kappa, stabilizer_braid_rank
from .groups import ReflectionGroup, full_subgroup
from .reflections import Arrangement, HyperplaneRecord, get_arrangement


@dataclass
class Table:
    title: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def records(self) -> list[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def to_json(self) -> str:
        obj = {"title": self.title, "meta": self.meta, "columns": self.columns, "rows": self.rows}
        return json.dumps(obj, indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Table":
        obj = json.loads(text)
        return cls(obj["title"], obj["columns"], obj["rows"], obj.get("meta", {}))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_cell(x) for x in row])
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = [f"### {self.title}", ""]
        for k, v in self.meta.items():
            lines.append(f"- {k}: {_cell(v)}")
        if self.meta:
            lines.append("")
        lines.append("| " + " | ".join(self.columns) + " |")
        lines.append("|" + "|".join("---" for _ in self.columns) + "|")
        for row in self.rows:
            lines.append("| " + " | ".join(_cell(x) for x in row) + " |")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "md":
            return self.to_markdown()
        raise ValueError(f"unknown format {fmt!r}")


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, (list, tuple)):
        return "{" + ",".join(_cell(y) for y in x) + "}"
    return str(x)


# --------------------------------------------------------------------------
# per-group data


def class_representatives(arr: Arrangement) -> list[int]:
    """Least hyperplane of each W-orbit, in canonical order."""
    return [orbit[0] for orbit in arr.orbits(full_subgroup(arr.G))]


def hyperplane_class(arr: Arrangement) -> dict[int, int]:
    """1-based class number of every hyperplane."""
    out = {}
    for k, orbit in enumerate(arr.orbits(full_subgroup(arr.G)), start=1):
        for h in orbit:
            out[h] = k
    return out


def series_row_key(G: ReflectionGroup, rec: HyperplaneRecord) -> str:
    """Which closed-form family a hyperplane of G(de,e,r) belongs to."""
    fam = G.family
    label = rec.label
    if not label.startswith("H("):
        return "x1=0"
    k = int(label.rsplit("z^", 1)[1].rstrip(")"))
    if fam.r == 2 and fam.e % 2 == 0 and k % 2 == 1:
        return "x2=zeta*x1"
    return "x2=x1"


def group_meta(G: ReflectionGroup) -> dict:
    return {"group": G.family.label(), "order": G.order, "rank": G.rank, "conductor": G.conductor}


def info_table(G: ReflectionGroup) -> Table:
    arr = get_arrangement(G)
    ab = abelian_invariants(G, full_subgroup(G))
    rows = [
        ["order", G.order],
        ["rank", G.rank],
        ["conductor", G.conductor],
        ["generators", len(G.generators)],
        ["reflections", len(G.reflections)],
        ["hyperplanes", len(arr)],
        ["hyperplane classes", len(class_representatives(arr))],
        ["abelianization", list(ab.factors)],
    ]
    if G.family.source:
        rows.append(["source", G.family.source.rsplit("/", 1)[-1]])
    return Table("group info", ["key", "value"], rows, {"group": G.family.label()})


def hyperplane_table(G: ReflectionGroup) -> Table:
    arr = get_arrangement(G)
    cls = hyperplane_class(arr)
    rows = [[rec.index, rec.label, cls[rec.index], rec.e, str(rec.hyperplane)] for rec in arr.records]
    return Table("hyperplanes", ["index", "label", "class", "e", "normal"], rows, group_meta(G))


def stabilizer_table(G: ReflectionGroup, hyps: list[int] | None = None) -> Table:
    arr = get_arrangement(G)
    arr.complete_all()
    cls = hyperplane_class(arr)
    rows = []
    for h in hyps if hyps is not None else range(len(arr)):
        rec = arr.records[h]
        rows.append([rec.index, rec.label, cls[h], rec.e, rec.f, rec.ramification,
                     rec.stabilizer.order, rec.parabolic.order, len(rec.commuting)])
    cols = ["index", "label", "class", "e", "f", "d", "N", "C", "commuting"]
    return Table("stabilizers", cols, rows, group_meta(G))


def orbit_table(G: ReflectionGroup, h: int) -> Table:
    arr = get_arrangement(G)
    rec = arr.complete(h)
    commuting = set(rec.commuting)
    rows = []
    for under, S in (("N", rec.stabilizer), ("C", rec.parabolic)):
        for orbit in arr.orbits(S):
            kind = "commuting" if orbit[0] in commuting else "non-commuting"
            rows.append([under, kind, [arr.records[x].label for x in orbit]])
    meta = {**group_meta(G), "hyperplane": rec.label}
    return Table("orbits", ["under", "kind", "orbit"], rows, meta)


def ramification_table(G: ReflectionGroup) -> Table:
    arr = get_arrangement(G)
    arr.complete_all()
    rows = []
    for k, h in enumerate(class_representatives(arr), start=1):
        rec = arr.records[h]
        rows.append([k, rec.label, rec.e, rec.f, rec.ramification])
    return Table("ramification", ["class", "representative", "e", "f", "d"], rows, group_meta(G))


def kappa_table(G: ReflectionGroup) -> Table:
    arr = get_arrangement(G)
    rep = kappa(G, arr)
    where = {rec.hyperplane: rec for rec in arr.records}
    rows = [[k, where[h].label, f] for k, (h, f) in enumerate(rep.orbits, start=1)]
    meta = {**group_meta(G), "kappa": rep.kappa}
    fam = G.family
    if fam.is_series:
        meta["closed_form"] = closed_form_kappa(fam.d, fam.e, fam.r)
        meta["closed_form_disagrees"] = closed_form_disagrees(fam.d, fam.e, fam.r, rep.kappa)
    return Table("kappa", ["class", "representative", "f"], rows, meta)


def exactness_rows(G: ReflectionGroup, jobs: int = 1) -> list[list]:
    """One row per hyperplane; reports are computed per class and shared along it."""
    arr = get_arrangement(G)
    arr.complete_all()
    cls = hyperplane_class(arr)
    reps = class_representatives(arr)

    def one(h: int):
        rec = arr.records[h]
        rep = exactness_report(G, rec, arr)
        rank = stabilizer_braid_rank(G, rec, arr)
        return h, rep, rank

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = dict((h, (r, k)) for h, r, k in pool.map(one, reps))
    else:
        results = {h: (r, k) for h, r, k in map(one, reps)}
    rep_of = {h: reps[cls[h] - 1] for h in range(len(arr))}
    rows = []
    for h in range(len(arr)):
        r, k = results[rep_of[h]]
        rec = arr.records[h]
        rows.append([h, rec.label, cls[h], rec.e, rec.f, r.c_ab.order, r.n_ab.order, r.injective,
                     r.orbit_criterion_commuting, r.orbit_criterion_noncommuting, r.orbit_criterion_full,
                     k.rank])
    return rows


EXACTNESS_COLUMNS = ["index", "label", "class", "e", "f", "C_ab", "N_ab", "injective",
                     "commuting_orbits_agree", "noncommuting_orbits_agree", "all_orbits_agree",
                     "stabilizer_braid_rank"]


def exactness_table(G: ReflectionGroup, jobs: int = 1) -> Table:
    return Table("exactness", EXACTNESS_COLUMNS, exactness_rows(G, jobs), group_meta(G))
