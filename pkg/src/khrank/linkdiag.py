"""Oriented link diagrams given by planar code.

A crossing X(a,b,c,d) lists its four arc labels counterclockwise starting at
the incoming under-strand, so the under-strand runs a -> c and the
over-strand occupies b and d.  A crossing is positive when the over-strand
runs d -> b.  Crossingless unknot components are tracked separately as free
loops (`O` in planar-code text).

Orientations are inferred from the under-strand constraints; components with
no under-passage get a deterministic default direction, overridden when
explicit signs demand the opposite.
"""
from __future__ import annotations

import re
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from khrank.braid import BraidWord

Quad = Tuple[int, int, int, int]

HEAD, TAIL = 1, -1
_PARTNER = {0: 2, 2: 0, 1: 3, 3: 1}


class DiagramError(ValueError):
    """A planar code that does not describe a consistent diagram."""


class _UnionFind:
    def __init__(self):
        self.parent: Dict[int, int] = {}

    def find(self, v: int) -> int:
        p = self.parent.setdefault(v, v)
        while p != self.parent[p]:
            self.parent[p] = self.parent[self.parent[p]]
            p = self.parent[p]
        self.parent[v] = p
        return p

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Smaller root wins, keeping representatives deterministic.
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


class LinkDiagram:
    """An oriented link diagram: crossings plus crossingless free loops."""

    __slots__ = ("crossings", "free_loops", "signs", "name", "_arc_comps")

    def __init__(self, crossings: Iterable[Sequence[int]], free_loops: int = 0,
                 signs: Sequence[int] | None = None, name: str | None = None):
        quads: List[Quad] = []
        for q in crossings:
            q = tuple(int(v) for v in q)
            if len(q) != 4:
                raise DiagramError(f"crossing {q} must have four arc labels")
            if any(v < 1 for v in q):
                raise DiagramError(f"crossing {q} has a non-positive arc label")
            quads.append(q)  # type: ignore[arg-type]
        self.crossings: Tuple[Quad, ...] = tuple(quads)
        self.free_loops = int(free_loops)
        if self.free_loops < 0:
            raise DiagramError("free loop count cannot be negative")
        self.name = name

        occ = self._occurrences()
        comps = self._strand_components(occ)
        roles = _orient(self.crossings, occ, comps)
        inferred = _signs_from_roles(self.crossings, roles)
        if signs is None:
            self.signs = tuple(inferred)
        else:
            self.signs = tuple(_reconcile_signs(self.crossings, occ, comps,
                                                inferred, [int(s) for s in signs]))
        self._arc_comps: Tuple[FrozenSet[int], ...] = tuple(
            sorted((frozenset(c) for c in comps), key=min))

    # -- validation helpers ------------------------------------------------

    def _occurrences(self) -> Dict[int, List[Tuple[int, int]]]:
        occ: Dict[int, List[Tuple[int, int]]] = {}
        for ci, q in enumerate(self.crossings):
            for slot, arc in enumerate(q):
                occ.setdefault(arc, []).append((ci, slot))
        for arc, places in occ.items():
            if len(places) != 2:
                raise DiagramError(
                    f"arc {arc} appears {len(places)} time(s), expected exactly 2")
        return occ

    def _strand_components(self, occ) -> List[List[int]]:
        uf = _UnionFind()
        for arc in occ:
            uf.find(arc)
        for (a, b, c, d) in self.crossings:
            uf.union(a, c)
            uf.union(b, d)
        groups: Dict[int, List[int]] = {}
        for arc in occ:
            groups.setdefault(uf.find(arc), []).append(arc)
        return list(groups.values())

    # -- basic queries -----------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def components(self) -> Tuple[FrozenSet[int], ...]:
        """Arc components sorted by smallest arc label; free loops follow them."""
        return self._arc_comps

    def component_count(self) -> int:
        return len(self._arc_comps) + self.free_loops

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def all_arcs(self) -> FrozenSet[int]:
        return frozenset(a for c in self._arc_comps for a in c)

    def _comp_index_of_arc(self) -> Dict[int, int]:
        out = {}
        for i, comp in enumerate(self._arc_comps):
            for a in comp:
                out[a] = i
        return out

    def linking_number(self, i: int, j: int) -> int:
        """Linking number of components i and j (free loops link nothing)."""
        n = self.component_count()
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise ValueError(f"bad component pair ({i}, {j})")
        k = len(self._arc_comps)
        if i >= k or j >= k:
            return 0
        where = self._comp_index_of_arc()
        total = 0
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            cu, co = where[a], where[b]
            if {cu, co} == {i, j}:
                total += s
        if total % 2:
            raise DiagramError("odd crossing sign sum between two components")
        return total // 2

    def linking_matrix(self) -> List[List[int]]:
        n = self.component_count()
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                m[i][j] = m[j][i] = self.linking_number(i, j)
        return m

    # -- constructions -----------------------------------------------------

    def mirror(self) -> "LinkDiagram":
        """Swap over and under strands everywhere; all crossing signs flip."""
        quads = []
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            quads.append((d, a, b, c) if s > 0 else (b, c, d, a))
        return LinkDiagram(quads, self.free_loops,
                           signs=[-s for s in self.signs], name=self.name)

    def disjoint_union(self, other: "LinkDiagram", name: str | None = None) -> "LinkDiagram":
        shift = max(self.all_arcs(), default=0)
        quads = list(self.crossings)
        quads += [tuple(v + shift for v in q) for q in other.crossings]
        return LinkDiagram(quads, self.free_loops + other.free_loops,
                           signs=self.signs + other.signs, name=name)

    def sublink(self, keep: Iterable[int]) -> "LinkDiagram":
        """The diagram of the sublink on the given component indices."""
        n = self.component_count()
        keep_set = set(keep)
        for i in keep_set:
            if not (0 <= i < n):
                raise ValueError(f"component index {i} out of range")
        k = len(self._arc_comps)
        kept_free = sum(1 for i in keep_set if i >= k)
        removed_arcs = set()
        for i, comp in enumerate(self._arc_comps):
            if i not in keep_set:
                removed_arcs.update(comp)
        uf = _UnionFind()
        quads, signs = [], []
        for q, s in zip(self.crossings, self.signs):
            a, b, c, d = q
            under_gone = a in removed_arcs
            over_gone = b in removed_arcs
            if under_gone and over_gone:
                continue
            if under_gone:
                uf.union(b, d)  # the surviving over-strand runs straight through
            elif over_gone:
                uf.union(a, c)
            else:
                quads.append(q)
                signs.append(s)
        quads = [tuple(uf.find(v) for v in q) for q in quads]
        used = {v for q in quads for v in q}
        new_loops = kept_free
        for i, comp in enumerate(self._arc_comps):
            if i in keep_set and not any(uf.find(a) in used for a in comp):
                new_loops += 1
        return LinkDiagram(quads, new_loops, signs=signs)

    def delete_component(self, i: int) -> "LinkDiagram":
        return self.sublink(j for j in range(self.component_count()) if j != i)

    # -- text and JSON -----------------------------------------------------

    def pd_text(self) -> str:
        parts = [f"X({a},{b},{c},{d})" for (a, b, c, d) in self.crossings]
        parts += ["O"] * self.free_loops
        return ";".join(parts)

    _TOKEN = re.compile(r"\s*(?:([xX])\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)|([oO]))\s*")

    @classmethod
    def parse(cls, text: str, name: str | None = None) -> "LinkDiagram":
        """Parse planar code like `X(1,3,2,4);X(3,1,4,2);O`."""
        quads: List[Quad] = []
        loops = 0
        saw_any = False
        for chunk in re.split(r"[;\n]+", text):
            chunk = chunk.strip()
            if not chunk:
                continue
            pos = 0
            while pos < len(chunk):
                m = cls._TOKEN.match(chunk, pos)
                if not m:
                    raise DiagramError(f"unreadable planar code near {chunk[pos:pos+20]!r}")
                if m.group(6):
                    loops += 1
                else:
                    quads.append(tuple(int(m.group(g)) for g in range(2, 6)))  # type: ignore[arg-type]
                saw_any = True
                pos = m.end()
        if not saw_any:
            raise DiagramError("empty planar code")
        return cls(quads, loops, name=name)

    def to_dict(self) -> dict:
        return {"name": self.name, "pd": self.pd_text(), "free_loops": self.free_loops}

    @classmethod
    def from_dict(cls, d: dict) -> "LinkDiagram":
        pd = d.get("pd", "")
        loops = int(d.get("free_loops", 0))
        if pd.strip():
            diag = cls.parse(pd, name=d.get("name"))
            if diag.free_loops != loops:
                # pd text may omit O tokens when free_loops is given separately
                diag = cls(diag.crossings, loops, signs=diag.signs, name=d.get("name"))
            return diag
        return cls((), loops, name=d.get("name"))

    def __repr__(self) -> str:
        label = self.name or self.pd_text() or "empty"
        return f"LinkDiagram({label})"


# -- orientation inference -------------------------------------------------

def _orient(crossings, occ, comps) -> Dict[Tuple[int, int], int]:
    """Assign HEAD/TAIL to each arc occurrence.

    The under-strand runs a -> c, which forces every slot-a occurrence to be
    a head and every slot-c occurrence a tail; those constraints propagate
    around each component along strand passages.
    """
    roles: Dict[Tuple[int, int], int] = {}
    comp_of = {}
    for idx, comp in enumerate(comps):
        for arc in comp:
            comp_of[arc] = idx

    other_occ = {}
    for arc, places in occ.items():
        other_occ[places[0]] = places[1]
        other_occ[places[1]] = places[0]

    for comp in comps:
        seed = None
        for arc in sorted(comp):
            for (ci, slot) in occ[arc]:
                if slot == 0:
                    seed = ((ci, slot), HEAD)
                    break
                if slot == 2:
                    seed = ((ci, slot), TAIL)
                    break
            if seed:
                break
        if seed is None:
            # Entirely-over component: direct the smallest arc out of its
            # first-listed occurrence.
            arc = min(comp)
            seed = (min(occ[arc]), TAIL)
        stack = [seed]
        while stack:
            key, role = stack.pop()
            if key in roles:
                if roles[key] != role:
                    raise DiagramError("planar code has inconsistent strand orientations")
                continue
            roles[key] = role
            ci, slot = key
            stack.append((other_occ[key], -role))
            stack.append(((ci, _PARTNER[slot]), -role))

    for ci, q in enumerate(crossings):
        if roles[(ci, 0)] != HEAD or roles[(ci, 2)] != TAIL:
            raise DiagramError("planar code has inconsistent strand orientations")
    return roles


def _signs_from_roles(crossings, roles) -> List[int]:
    signs = []
    for ci in range(len(crossings)):
        if roles[(ci, 3)] == roles[(ci, 1)]:
            raise DiagramError("planar code has inconsistent strand orientations")
        signs.append(1 if roles[(ci, 3)] == HEAD else -1)
    return signs


def _reconcile_signs(crossings, occ, comps, inferred, wanted) -> List[int]:
    """Match requested signs by reversing components whose direction is free."""
    if len(wanted) != len(crossings):
        raise DiagramError("sign list length does not match crossing count")
    if inferred == wanted:
        return wanted
    comp_of = {}
    for idx, comp in enumerate(comps):
        for arc in comp:
            comp_of[arc] = idx
    free = set(range(len(comps)))
    for comp_idx, comp in enumerate(comps):
        for arc in comp:
            if any(slot in (0, 2) for _, slot in occ[arc]):
                free.discard(comp_idx)
                break
    current = list(inferred)
    # Reversing a free component flips exactly the crossings it passes over.
    for comp_idx in sorted(free):
        touched = [ci for ci, q in enumerate(crossings) if comp_of[q[1]] == comp_idx]
        if touched and all(current[ci] != wanted[ci] for ci in touched):
            for ci in touched:
                current[ci] = -current[ci]
    if current != wanted:
        raise DiagramError("requested signs do not match any orientation of the diagram")
    return wanted


# -- braids ----------------------------------------------------------------

def braid_closure(word: BraidWord, name: str | None = None) -> LinkDiagram:
    """Diagram of the closed braid, strands oriented downward.

    A positive letter i makes a positive crossing between positions i and
    i+1; untouched strands close into free loops.
    """
    l = word.strands
    cur = list(range(1, l + 1))
    nxt = l + 1
    quads: List[Quad] = []
    signs: List[int] = []
    for a in word.letters:
        i = abs(a) - 1
        u, v = cur[i], cur[i + 1]
        p, q = nxt, nxt + 1
        nxt += 2
        if a > 0:
            quads.append((u, p, q, v))
            signs.append(1)
        else:
            quads.append((v, u, p, q))
            signs.append(-1)
        cur[i], cur[i + 1] = p, q
    return _close_strands(l, cur, quads, signs, name)


def axis_link(word: BraidWord, name: str | None = None) -> LinkDiagram:
    """Closure of the word together with its braid axis.

    The axis circles all strands below the word: it passes over every strand
    heading left, loops around, and passes under every strand heading right.
    All 2l axis crossings are positive, so the axis links each strand once.
    """
    l = word.strands
    cur = list(range(1, l + 1))
    nxt = l + 1
    quads: List[Quad] = []
    signs: List[int] = []
    for a in word.letters:
        i = abs(a) - 1
        u, v = cur[i], cur[i + 1]
        p, q = nxt, nxt + 1
        nxt += 2
        if a > 0:
            quads.append((u, p, q, v))
            signs.append(1)
        else:
            quads.append((v, u, p, q))
            signs.append(-1)
        cur[i], cur[i + 1] = p, q
    u2 = [nxt + k for k in range(l)]          # strand arcs between the two axis passes
    v2 = [nxt + l + k for k in range(l)]      # strand arcs returning to the closure
    t = [nxt + 2 * l + k for k in range(l)]   # axis arcs on the over pass, right to left
    s = [nxt + 3 * l + k for k in range(l)]   # axis arcs on the under pass, left to right

    def t_arc(k: int) -> int:
        return t[k] if k < l else s[0]

    def s_arc(k: int) -> int:
        return s[k] if k < l else t[0]

    for i in range(1, l + 1):
        # axis over strand i (axis running leftward, strand downward)
        quads.append((cur[i - 1], t_arc(l - i + 1), u2[i - 1], t_arc(l - i)))
        signs.append(1)
    for i in range(1, l + 1):
        # axis under strand i (axis running rightward)
        quads.append((s_arc(i - 1), v2[i - 1], s_arc(i), u2[i - 1]))
        signs.append(1)
    return _close_strands(l, v2, quads, signs, name)


def _close_strands(l: int, bottom: List[int], quads: List[Quad],
                   signs: List[int], name: str | None) -> LinkDiagram:
    uf = _UnionFind()
    for k in range(l):
        uf.union(bottom[k], k + 1)
    merged = [tuple(uf.find(v) for v in q) for q in quads]
    used = {v for q in merged for v in q}
    loops = len({uf.find(k + 1) for k in range(l)} - used)
    relabel: Dict[int, int] = {}
    for q in merged:
        for v in q:
            if v not in relabel:
                relabel[v] = len(relabel) + 1
    final = [tuple(relabel[v] for v in q) for q in merged]
    return LinkDiagram(final, loops, signs=signs, name=name)
