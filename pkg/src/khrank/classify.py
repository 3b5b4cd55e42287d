"""Rank-based link classification and finite-table verification.

classify_by_rank names the only link class a diagram can belong to given
its component count and Z/2 Khovanov total, for totals below the classified
thresholds.  verify_table replays every table-wide structural check over a
set of dataset entries and reports pass/fail per check.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .braid import BraidWord
from .dataset import DatasetEntry
from .khovanov import (boundary_matrices, kh_ranks, reduced_total_for_arc,
                       resolve, total_rank)
from .linkdiag import LinkDiagram, axis_link, braid_closure

__all__ = [
    "BatsonSeedReport",
    "BipartitionMargin",
    "CheckRecord",
    "ClassificationReport",
    "TableReport",
    "batson_seed_check",
    "classify_by_rank",
    "rank_threshold",
    "verify_table",
]

CLASS_ABOVE = "above-threshold"

# classify names a forced class, not an isotopy type; every report carries
# this reminder verbatim
CAVEAT = ("rank-forced identification over the verified finite table; "
          "not an isotopy certificate")

# Alternate presentations of two fixed links, used to confirm that totals
# do not depend on how a link is drawn.
_TREFOIL_ALT_PD = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
_L4A1_ALT_PD = "X(1,2,3,4);X(5,1,4,6);X(7,5,6,8);X(2,7,8,3)"

# Names allowed to appear with total <= 8; mirror suffixes are stripped
# before lookup.  Classful aliases let user tables reuse the check.
_LOW_RANK_MEMBERS = frozenset({
    "unknot", "unlink-1", "unlink-2", "unlink-3",
    "3_1", "trefoil", "L2a1", "Hopf", "L4a1",
    "Hopf#Hopf", "Hopf⊔unknot",
})

_KUNNETH_PAIRS = (
    ("unlink-2", "unknot", "unknot"),
    ("unlink-3", "unlink-2", "unknot"),
    ("unlink-4", "unlink-2", "unlink-2"),
    ("Hopf⊔unknot", "L2a1", "unknot"),
    ("trefoil⊔unknot", "3_1", "unknot"),
)


def rank_threshold(n: int) -> int:
    """Largest classified total for an n-component link."""
    if n <= 2:
        return 8
    if n == 3:
        return 12
    return 16


@dataclass(frozen=True)
class BipartitionMargin:
    side_a: Tuple[int, ...]
    side_b: Tuple[int, ...]
    rank_a: int
    rank_b: int
    margin: int

    def to_dict(self) -> dict:
        return {
            "side_a": list(self.side_a),
            "side_b": list(self.side_b),
            "rank_a": self.rank_a,
            "rank_b": self.rank_b,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class BatsonSeedReport:
    name: Optional[str]
    components: int
    total: int
    margins: Tuple[BipartitionMargin, ...]

    @property
    def all_nonnegative(self) -> bool:
        return all(m.margin >= 0 for m in self.margins)

    @property
    def min_margin(self) -> int:
        return min(m.margin for m in self.margins)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "components": self.components,
            "total": self.total,
            "all_nonnegative": self.all_nonnegative,
            "margins": [m.to_dict() for m in self.margins],
        }


@dataclass(frozen=True)
class ClassificationReport:
    name: Optional[str]
    components: int
    total: int
    reduced_total: int
    parity_ok: bool
    lower_bound_ok: bool
    batson_ok: Optional[bool]
    rank_class: str
    flags: Tuple[str, ...]
    caveat: str = CAVEAT

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "components": self.components,
            "total": self.total,
            "reduced_total": self.reduced_total,
            "parity_ok": self.parity_ok,
            "lower_bound_ok": self.lower_bound_ok,
            "batson_ok": self.batson_ok,
            "rank_class": self.rank_class,
            "flags": list(self.flags),
            "caveat": self.caveat,
        }


def _restrict(diagram: LinkDiagram, keep: Sequence[int]) -> LinkDiagram:
    """Delete every component not in keep, highest index first."""
    out = diagram
    for i in sorted(set(range(diagram.component_count())) - set(keep),
                    reverse=True):
        out = out.delete_component(i)
    return out


def batson_seed_check(diagram: LinkDiagram, *,
                      max_crossings: int | None = None) -> BatsonSeedReport:
    """Margins total(D) - total(A)*total(B) over all component bipartitions."""
    n = diagram.component_count()
    if n < 2:
        raise ValueError(
            f"bipartition margins need at least 2 components, got {n}")
    total = total_rank(diagram, max_crossings=max_crossings)
    margins: List[BipartitionMargin] = []
    rest = list(range(1, n))
    for size in range(len(rest) + 1):
        for extra in combinations(rest, size):
            side_a = (0,) + extra
            side_b = tuple(i for i in range(n) if i not in side_a)
            if not side_b:
                continue
            ra = total_rank(_restrict(diagram, side_a),
                            max_crossings=max_crossings)
            rb = total_rank(_restrict(diagram, side_b),
                            max_crossings=max_crossings)
            margins.append(BipartitionMargin(side_a, side_b, ra, rb,
                                             total - ra * rb))
    return BatsonSeedReport(diagram.name, n, total, tuple(margins))


def _nonzero_linking_pairs(diagram: LinkDiagram) -> int:
    lk = diagram.linking_matrix()
    n = len(lk)
    return sum(1 for i in range(n) for j in range(i + 1, n) if lk[i][j] != 0)


def _match_class(diagram: LinkDiagram, n: int, total: int) -> Tuple[str, List[str]]:
    """Class for a total at or below the threshold, plus anomaly flags."""
    flags: List[str] = []

    def odd_total():
        flags.append(
            f"total rank {total} is outside the classified values for "
            f"{n} component(s)")

    if n == 1:
        cls = "unlink-1" if total <= 4 else "trefoil"
        if total not in (2, 6):
            odd_total()
    elif n == 2:
        if total <= 6:
            cls = "Hopf" if _nonzero_linking_pairs(diagram) else "unlink-2"
            if total != 4:
                odd_total()
        else:
            cls = "L4a1-class"
            if total != 8:
                odd_total()
    elif n == 3:
        if total <= 10:
            pairs = _nonzero_linking_pairs(diagram)
            cls = {0: "unlink-3", 1: "Hopf⊔unknot"}.get(pairs, "Hopf#Hopf")
            if pairs > 2:
                flags.append("linking pattern unexpected for total rank 8")
            if total != 8:
                odd_total()
        else:
            cls = "L6n1-class"
            if total != 12:
                odd_total()
    else:
        cls = f"unlink-{n}"
        if not (n == 4 and total == 16):
            odd_total()
    return cls, flags


def classify_by_rank(diagram: LinkDiagram, *,
                     max_crossings: int | None = None) -> ClassificationReport:
    ranks = kh_ranks(diagram, max_crossings=max_crossings)
    n = ranks.components
    total = ranks.total
    parity_ok = total % 4 == (2 if n == 1 else 0)
    lower_ok = total >= 2 ** n
    batson_ok: Optional[bool] = None
    if n >= 2:
        batson_ok = batson_seed_check(
            diagram, max_crossings=max_crossings).all_nonnegative

    flags: List[str] = []
    if total > rank_threshold(n):
        cls = CLASS_ABOVE
    else:
        cls, flags = _match_class(diagram, n, total)
    if not parity_ok:
        flags.append("parity constraint violated")
    if not lower_ok:
        flags.append("total rank below 2^components")

    return ClassificationReport(
        name=diagram.name,
        components=n,
        total=total,
        reduced_total=ranks.reduced_total,
        parity_ok=parity_ok,
        lower_bound_ok=lower_ok,
        batson_ok=batson_ok,
        rank_class=cls,
        flags=tuple(flags),
    )


# ---------------------------------------------------------------------------
# table verification


@dataclass(frozen=True)
class CheckRecord:
    check: str
    description: str
    status: str  # "pass" | "fail" | "vacuous"
    counterexamples: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "description": self.description,
            "status": self.status,
            "counterexamples": list(self.counterexamples),
        }


@dataclass(frozen=True)
class TableReport:
    entry_count: int
    records: Tuple[CheckRecord, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def to_dict(self) -> dict:
        return {
            "entries": self.entry_count,
            "all_pass": self.all_pass,
            "checks": [r.to_dict() for r in self.records],
        }

    def format_text(self) -> str:
        width = max(len(r.check) for r in self.records)
        lines = [f"verified {self.entry_count} entries"]
        for r in self.records:
            tail = ""
            if r.counterexamples:
                tail = "  [" + ", ".join(r.counterexamples) + "]"
            lines.append(
                f"{r.status.upper():7s} {r.check:<{width}s}  {r.description}{tail}")
        lines.append("result: " + ("all checks pass" if self.all_pass
                                   else "NOT all checks pass"))
        return "\n".join(lines)


def _chain_dims(diagram: LinkDiagram) -> Dict[Tuple[int, int], int]:
    """Chain-group dimensions keyed by (i, j), built from resolve alone."""
    n = diagram.crossing_count
    np_, nm = diagram.n_plus, diagram.n_minus
    dims: Dict[Tuple[int, int], int] = {}
    for v in range(1 << n):
        bits = [(v >> k) & 1 for k in range(n)]
        circles = len(resolve(diagram, bits))
        h = sum(bits)
        base_j = h + np_ - 2 * nm
        for ones in range(circles + 1):
            key = (h - nm, base_j + circles - 2 * ones)
            dims[key] = dims.get(key, 0) + comb(circles, ones)
    return dims


def _euler_matches(diagram: LinkDiagram, bigraded) -> bool:
    dims = _chain_dims(diagram)
    chain: Dict[int, int] = {}
    for (i, j), dim in dims.items():
        chain[j] = chain.get(j, 0) + (-1) ** i * dim
    hom: Dict[int, int] = {}
    for (i, j, r) in bigraded:
        hom[j] = hom.get(j, 0) + (-1) ** i * r
    chain = {j: c for j, c in chain.items() if c}
    hom = {j: c for j, c in hom.items() if c}
    return chain == hom


def _d_squared_zero(diagram: LinkDiagram, max_crossings) -> bool:
    for reduced in (False, True):
        if reduced and not diagram.all_arcs():
            continue
        mats = boundary_matrices(diagram, reduced=reduced,
                                 max_crossings=max_crossings)
        for (h, j), m1 in mats.items():
            m2 = mats.get((h + 1, j))
            if m2 is not None and m2.nrows == m1.ncols:
                if not (m1 * m2).is_zero():
                    return False
    return True


def _entry_facts(entry: DatasetEntry, max_crossings: int | None) -> dict:
    d = entry.diagram()
    r = kh_ranks(d, max_crossings=max_crossings)
    md = d.mirror()
    mr = kh_ranks(md, max_crossings=max_crossings)
    n, total = r.components, r.total

    arcs = sorted(d.all_arcs())
    if arcs:
        halving = all(
            2 * reduced_total_for_arc(d, a, max_crossings=max_crossings) == total
            for a in arcs)
    else:
        halving = 2 * r.reduced_total == total

    mirrored_back = d.mirror().mirror()
    base = classify_by_rank(d, max_crossings=max_crossings)
    mirror_cls = classify_by_rank(md, max_crossings=max_crossings)

    return {
        "name": entry.name,
        "n": n,
        "total": total,
        "has_expected": entry.expected_total is not None,
        "expected_ok": (entry.expected_total is None
                        or entry.expected_total == total),
        "mirror_involution": (mirrored_back.crossings == d.crossings
                              and mirrored_back.free_loops == d.free_loops),
        "d2_zero": _d_squared_zero(d, max_crossings),
        "euler": _euler_matches(d, r.bigraded),
        "halving": halving,
        "mirror_symmetry": (mr.total == total and
                            sorted(mr.bigraded) ==
                            sorted((-i, -j, rk) for (i, j, rk) in r.bigraded)),
        "parity": total % 4 == (2 if n == 1 else 0),
        "lower_bound": total >= 2 ** n,
        "classify_mirror": (base.total == mirror_cls.total
                            and base.components == mirror_cls.components
                            and base.rank_class == mirror_cls.rank_class),
        "batson": (True if n < 2 else
                   batson_seed_check(d, max_crossings=max_crossings).all_nonnegative),
        "round_trip": DatasetEntry.from_json_obj(json.loads(entry.to_line())) == entry,
    }


def _per_entry_record(check: str, description: str, facts: Sequence[dict],
                      key: str) -> CheckRecord:
    bad = tuple(f["name"] for f in facts if not f[key])
    return CheckRecord(check, description, "fail" if bad else "pass", bad)


def _pair_record(check: str, description: str, got: Iterable[str],
                 pair: Tuple[str, ...]) -> CheckRecord:
    got = set(got)
    if not got:
        # an empty class is reported as vacuous, never as a pass
        return CheckRecord(check, description, "vacuous")
    if got == set(pair):
        return CheckRecord(check, description, "pass")
    return CheckRecord(check, description, "fail",
                       tuple(sorted(got.symmetric_difference(set(pair)))))


def _presentation_invariance(max_crossings) -> bool:
    tre_a = total_rank(braid_closure(BraidWord.parse("2:1 1 1")),
                       max_crossings=max_crossings)
    tre_b = total_rank(LinkDiagram.parse(_TREFOIL_ALT_PD),
                       max_crossings=max_crossings)
    l4_a = total_rank(axis_link(BraidWord.parse("2:1")),
                      max_crossings=max_crossings)
    l4_b = total_rank(LinkDiagram.parse(_L4A1_ALT_PD),
                      max_crossings=max_crossings)
    return tre_a == tre_b and l4_a == l4_b == 8


def _kunneth_record(entries: Dict[str, DatasetEntry],
                    totals: Dict[str, int], max_crossings) -> CheckRecord:
    desc = "split unions multiply totals on designated pairs"
    bad: List[str] = []
    seen = False
    for whole, p1, p2 in _KUNNETH_PAIRS:
        if whole not in totals or p1 not in totals or p2 not in totals:
            continue
        seen = True
        product = totals[p1] * totals[p2]
        union = entries[p1].diagram().disjoint_union(entries[p2].diagram())
        if totals[whole] != product or total_rank(
                union, max_crossings=max_crossings) != product:
            bad.append(whole)
    if not seen:
        return CheckRecord("kunneth-pairs", desc, "vacuous")
    return CheckRecord("kunneth-pairs", desc,
                       "fail" if bad else "pass", tuple(sorted(bad)))


def verify_table(entries: Iterable[DatasetEntry], *, jobs: int | None = None,
                 max_crossings: int | None = None) -> TableReport:
    """Run every table-wide check; failures are report content, not errors."""
    entries = tuple(entries)
    worker = partial(_entry_facts, max_crossings=max_crossings)
    n_jobs = os.cpu_count() or 1 if jobs is None else max(1, jobs)
    if n_jobs == 1 or len(entries) <= 1:
        facts = [worker(e) for e in entries]
    else:
        with ProcessPoolExecutor(max_workers=min(n_jobs, len(entries))) as ex:
            facts = list(ex.map(worker, entries))
    facts.sort(key=lambda f: f["name"])
    by_name = {e.name: e for e in entries}
    totals = {f["name"]: f["total"] for f in facts}

    records: List[CheckRecord] = [
        _per_entry_record("mirror-involution",
                          "mirror of mirror returns the same diagram",
                          facts, "mirror_involution"),
        _per_entry_record("d-squared-zero",
                          "composed differentials vanish on every entry",
                          facts, "d2_zero"),
        _per_entry_record("euler-blockwise",
                          "chain and homology Euler characteristics agree "
                          "per quantum degree", facts, "euler"),
        _per_entry_record("halving-basepoints",
                          "unreduced total is twice the reduced total for "
                          "every basepoint arc", facts, "halving"),
        _per_entry_record("mirror-rank-symmetry",
                          "mirror bigraded ranks match under "
                          "(i, j) -> (-i, -j)", facts, "mirror_symmetry"),
        _kunneth_record(by_name, totals, max_crossings),
        CheckRecord("presentation-invariance",
                    "fixed links computed from different presentations agree",
                    "pass" if _presentation_invariance(max_crossings)
                    else "fail"),
        _per_entry_record("parity",
                          "totals are 2 mod 4 for knots, 0 mod 4 for links",
                          facts, "parity"),
        _per_entry_record("rank-lower-bound",
                          "total is at least 2^components",
                          facts, "lower_bound"),
        _per_entry_record("classify-mirror",
                          "classification is mirror-invariant",
                          facts, "classify_mirror"),
        _per_entry_record("batson-margins",
                          "bipartition rank margins are nonnegative",
                          facts, "batson"),
        _per_entry_record("entry-round-trip",
                          "entries survive the table file format",
                          facts, "round_trip"),
        _pair_record("rank8-pair",
                     "2-component entries with total 8 are exactly the "
                     "L4a1 pair",
                     (f["name"] for f in facts
                      if f["n"] == 2 and f["total"] == 8),
                     ("L4a1", "L4a1-mirror")),
        _pair_record("rank12-pair",
                     "3-component entries with total 12 are exactly the "
                     "L6n1 pair",
                     (f["name"] for f in facts
                      if f["n"] == 3 and f["total"] == 12),
                     ("L6n1", "L6n1-mirror")),
        _low_rank_record(facts),
        _expected_record(facts),
    ]
    return TableReport(entry_count=len(entries), records=tuple(records))


def _low_rank_record(facts: Sequence[dict]) -> CheckRecord:
    desc = "every entry with total at most 8 is a listed low-rank class"
    low = [f for f in facts if f["total"] <= 8]
    if not low:
        return CheckRecord("low-rank-membership", desc, "vacuous")
    bad = tuple(f["name"] for f in low
                if f["name"].removesuffix("-mirror") not in _LOW_RANK_MEMBERS)
    return CheckRecord("low-rank-membership", desc,
                       "fail" if bad else "pass", bad)


def _expected_record(facts: Sequence[dict]) -> CheckRecord:
    desc = "expected totals match computed totals"
    with_expected = [f for f in facts if f["has_expected"]]
    if not with_expected:
        return CheckRecord("expected-totals", desc, "vacuous")
    bad = tuple(f["name"] for f in with_expected if not f["expected_ok"])
    return CheckRecord("expected-totals", desc,
                       "fail" if bad else "pass", bad)
