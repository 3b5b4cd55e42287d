"""Khovanov homology ranks over Z/2 via the cube of resolutions.

Vertices of the cube are crossing resolutions (bit 0 joins a-b and c-d, bit
1 joins a-d and b-c); each resolution circle carries a label 1 or X.  Over
Z/2 the merge takes 1*1 -> 1, 1*X -> X, X*X -> 0 and the split takes
1 -> 1X + X1, X -> XX, with no edge signs.  Gradings: i = |v| - n_minus and
j = (#1 - #X) + |v| + n_plus - 2*n_minus.  Reduced homology is the
subcomplex with X on the basepoint circle, with j shifted by +1.

Ranks are computed block by block in (i, j): each block only needs the
dimensions and the boundary ranks into and out of it over GF(2).
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from khrank.gf2 import BitMatrix, gf2_rank
from khrank.linkdiag import LinkDiagram

DEFAULT_MAX_CROSSINGS = 14
MAX_CROSSINGS_ENV = "KHRANK_MAX_CROSSINGS"


def crossing_limit(explicit: int | None = None) -> int:
    """The crossing cap: explicit value, else the environment, else 14."""
    if explicit is not None:
        return int(explicit)
    raw = os.environ.get(MAX_CROSSINGS_ENV)
    if raw is not None and raw.strip():
        try:
            return int(raw)
        except ValueError:
            raise ValueError(
                f"{MAX_CROSSINGS_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_MAX_CROSSINGS


def _remove_bit(mask: int, p: int) -> int:
    return (mask & ((1 << p) - 1)) | ((mask >> (p + 1)) << p)


def _insert_bit(mask: int, p: int, bit: int) -> int:
    return (mask & ((1 << p) - 1)) | (((mask >> p) << (p + 1)) | (bit << p))


class _Cube:
    """Resolution cube of the crossing part of a diagram."""

    def __init__(self, diagram: LinkDiagram, basepoint_arc: int | None = None):
        arcs = sorted(diagram.all_arcs())
        self.arc_index = {a: i for i, a in enumerate(arcs)}
        self.arc_count = len(arcs)
        self.quads = [tuple(self.arc_index[v] for v in q) for q in diagram.crossings]
        self.n = len(self.quads)
        self.n_plus = diagram.n_plus
        self.n_minus = diagram.n_minus
        self.bp = None if basepoint_arc is None else self.arc_index[basepoint_arc]
        self._cache: Dict[int, Tuple[int, Tuple[int, ...]]] = {}
        self.levels: List[List[int]] = [[] for _ in range(self.n + 1)]
        for v in range(1 << self.n):
            self.levels[v.bit_count()].append(v)

    def circles(self, v: int) -> Tuple[int, Tuple[int, ...]]:
        """(number of circles, arc -> circle index); circles ordered by min arc."""
        got = self._cache.get(v)
        if got is not None:
            return got
        parent = list(range(self.arc_count))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k, (a, b, c, d) in enumerate(self.quads):
            if (v >> k) & 1:
                pairs = ((a, d), (b, c))
            else:
                pairs = ((a, b), (c, d))
            for s, t in pairs:
                rs, rt = find(s), find(t)
                if rs != rt:
                    parent[rt] = rs
        order: Dict[int, int] = {}
        arc2c = []
        for arc in range(self.arc_count):
            r = find(arc)
            if r not in order:
                order[r] = len(order)
            arc2c.append(order[r])
        out = (len(order), tuple(arc2c))
        self._cache[v] = out
        return out

    def blocks(self, h: int) -> Dict[int, Dict[Tuple[int, int], int]]:
        """Basis index per quantum grading j at cube level h (unshifted reduced)."""
        out: Dict[int, Dict[Tuple[int, int], int]] = {}
        if not (0 <= h <= self.n):
            return out
        shift = h + self.n_plus - 2 * self.n_minus
        for v in self.levels[h]:
            nc, arc2c = self.circles(v)
            bp_bit = None if self.bp is None else arc2c[self.bp]
            for mask in range(1 << nc):
                if bp_bit is not None and not (mask >> bp_bit) & 1:
                    continue
                j = nc - 2 * mask.bit_count() + shift
                out.setdefault(j, {})[(v, mask)] = 0
        for block in out.values():
            for idx, key in enumerate(sorted(block)):
                block[key] = idx
        return out

    def push(self, v: int, mask: int) -> Iterator[Tuple[int, int]]:
        """Targets of the differential applied to generator (v, mask)."""
        nc_v, arc2c_v = self.circles(v)
        for k in range(self.n):
            if (v >> k) & 1:
                continue
            w = v | (1 << k)
            nc_w, arc2c_w = self.circles(w)
            a, b, c, _ = self.quads[k]
            if nc_w == nc_v - 1:
                # the 0-resolution circles through a-b and through c-d fuse
                pos_a, pos_b = arc2c_v[a], arc2c_v[c]
                if pos_a == pos_b:
                    raise AssertionError("merge edge with a single source circle")
                bit = ((mask >> pos_a) | (mask >> pos_b)) & 1
                if (mask >> pos_a) & (mask >> pos_b) & 1:
                    continue  # X*X = 0
                lo, hi = sorted((pos_a, pos_b))
                tmp = _remove_bit(_remove_bit(mask, hi), lo)
                yield w, _insert_bit(tmp, arc2c_w[a], bit)
            else:
                pos_src = arc2c_v[a]
                pos_c, pos_d = sorted((arc2c_w[a], arc2c_w[b]))
                tmp = _remove_bit(mask, pos_src)
                if (mask >> pos_src) & 1:
                    yield w, _insert_bit(_insert_bit(tmp, pos_c, 1), pos_d, 1)
                else:
                    yield w, _insert_bit(_insert_bit(tmp, pos_c, 1), pos_d, 0)
                    yield w, _insert_bit(_insert_bit(tmp, pos_c, 0), pos_d, 1)


def resolve(diagram: LinkDiagram, bits) -> Tuple[frozenset, ...]:
    """Circles of a complete resolution, one frozenset of arcs per circle.

    ``bits`` lists one 0/1 per crossing, in diagram order; bit 0 joins a-b
    and c-d, bit 1 joins a-d and b-c.  Free loops come last as empty sets.
    """
    bits = tuple(int(b) for b in bits)
    if len(bits) != len(diagram.crossings):
        raise ValueError(
            f"resolution has {len(bits)} bits for {len(diagram.crossings)} crossings")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("resolution bits must be 0 or 1")
    cube = _Cube(diagram)
    mask = sum(b << k for k, b in enumerate(bits))
    nc, arc2c = cube.circles(mask)
    arcs = sorted(diagram.all_arcs())
    groups: List[set] = [set() for _ in range(nc)]
    for idx, label in enumerate(arcs):
        groups[arc2c[idx]].add(label)
    out = [frozenset(g) for g in groups]
    out.extend(frozenset() for _ in range(diagram.free_loops))
    return tuple(out)


def _cube_ranks(cube: _Cube) -> Dict[Tuple[int, int], int]:
    """Homology ranks of the cube complex, keyed by (i, j)."""
    dims: Dict[Tuple[int, int], int] = {}
    out_rank: Dict[Tuple[int, int], int] = {}
    blocks_h = cube.blocks(0)
    for h in range(cube.n + 1):
        for j, block in blocks_h.items():
            if block:
                dims[(h, j)] = len(block)
        if h < cube.n:
            blocks_next = cube.blocks(h + 1)
            for j, block in blocks_h.items():
                dst = blocks_next.get(j, {})
                rows = [0] * len(block)
                for (v, mask), idx in block.items():
                    acc = 0
                    for w, m2 in cube.push(v, mask):
                        acc ^= 1 << dst[(w, m2)]
                    rows[idx] = acc
                r = gf2_rank(rows)
                if r:
                    out_rank[(h, j)] = r
            blocks_h = blocks_next
    ranks: Dict[Tuple[int, int], int] = {}
    for (h, j), dim in dims.items():
        r = dim - out_rank.get((h, j), 0) - out_rank.get((h - 1, j), 0)
        if r < 0:
            raise AssertionError("negative homology rank: block bookkeeping is wrong")
        if r:
            ranks[(h - cube.n_minus, j)] = r
    return ranks


def _fold_loops(ranks: Dict[Tuple[int, int], int], loops: int) -> Dict[Tuple[int, int], int]:
    """Tensor with one (0, +-1) pair per crossingless unknot component."""
    for _ in range(loops):
        nxt: Dict[Tuple[int, int], int] = {}
        for (i, j), r in ranks.items():
            for dj in (-1, 1):
                nxt[(i, j + dj)] = nxt.get((i, j + dj), 0) + r
        ranks = nxt
    return ranks


def _sorted_triples(ranks: Dict[Tuple[int, int], int]) -> Tuple[Tuple[int, int, int], ...]:
    return tuple((i, j, r) for (i, j), r in sorted(ranks.items()))


@dataclass(frozen=True)
class KhovanovRanks:
    """Bigraded Z/2 ranks of a diagram, unreduced and reduced."""

    components: int
    total: int
    reduced_total: int
    bigraded: Tuple[Tuple[int, int, int], ...]
    reduced_bigraded: Tuple[Tuple[int, int, int], ...]
    name: Optional[str] = None

    def bigraded_map(self) -> Dict[Tuple[int, int], int]:
        return {(i, j): r for i, j, r in self.bigraded}

    def euler_by_j(self) -> Dict[int, int]:
        """Coefficients of the graded Euler characteristic in q."""
        out: Dict[int, int] = {}
        for i, j, r in self.bigraded:
            out[j] = out.get(j, 0) + (r if i % 2 == 0 else -r)
        return {j: c for j, c in out.items() if c}

    def to_dict(self) -> dict:
        d = {
            "components": self.components,
            "total": self.total,
            "reduced_total": self.reduced_total,
            "bigraded": [[i, j, r] for i, j, r in self.bigraded],
        }
        if self.name is not None:
            d = {"name": self.name, **d}
        return d


def kh_ranks(diagram: LinkDiagram, *, max_crossings: int | None = None,
             name: str | None = None) -> KhovanovRanks:
    """Unreduced and reduced Khovanov ranks over Z/2 of a link diagram.

    The default basepoint for the reduced theory sits on the component with
    the smallest arc label (or on a free loop if there are no crossings);
    over Z/2 the reduced total does not depend on that choice.
    """
    limit = crossing_limit(max_crossings)
    if diagram.crossing_count > limit:
        raise ValueError(
            f"diagram has {diagram.crossing_count} crossings, "
            f"over the limit of {limit}")
    loops = diagram.free_loops
    arc_comps = diagram.components()

    unreduced_core = _cube_ranks(_Cube(diagram))
    unreduced = _fold_loops(unreduced_core, loops)

    if arc_comps:
        bp = min(min(c) for c in arc_comps)
        reduced_core = _cube_ranks(_Cube(diagram, basepoint_arc=bp))
        reduced_core = {(i, j + 1): r for (i, j), r in reduced_core.items()}
        reduced = _fold_loops(reduced_core, loops)
    elif loops:
        reduced = _fold_loops(dict(unreduced_core), loops - 1)
    else:
        reduced = {}

    return KhovanovRanks(
        components=diagram.component_count(),
        total=sum(unreduced.values()),
        reduced_total=sum(reduced.values()),
        bigraded=_sorted_triples(unreduced),
        reduced_bigraded=_sorted_triples(reduced),
        name=name if name is not None else diagram.name,
    )


def total_rank(diagram: LinkDiagram, *, max_crossings: int | None = None) -> int:
    return kh_ranks(diagram, max_crossings=max_crossings).total


def reduced_total_for_component(diagram: LinkDiagram, comp_index: int, *,
                                max_crossings: int | None = None) -> int:
    """Reduced total with the basepoint on the given component."""
    limit = crossing_limit(max_crossings)
    if diagram.crossing_count > limit:
        raise ValueError(
            f"diagram has {diagram.crossing_count} crossings, "
            f"over the limit of {limit}")
    n_comp = diagram.component_count()
    if not (0 <= comp_index < n_comp):
        raise ValueError(f"component index {comp_index} out of range")
    arc_comps = diagram.components()
    loops = diagram.free_loops
    if comp_index < len(arc_comps):
        bp = min(arc_comps[comp_index])
        core = _cube_ranks(_Cube(diagram, basepoint_arc=bp))
        return sum(core.values()) * (1 << loops)
    core_total = sum(_cube_ranks(_Cube(diagram)).values())
    return core_total * (1 << (loops - 1))


def reduced_total_for_arc(diagram: LinkDiagram, arc: int, *,
                          max_crossings: int | None = None) -> int:
    """Reduced total with the basepoint on the given arc.

    Over Z/2 the answer is the same for every arc; exposing the choice
    lets callers confirm that on real diagrams.
    """
    limit = crossing_limit(max_crossings)
    if diagram.crossing_count > limit:
        raise ValueError(
            f"diagram has {diagram.crossing_count} crossings, "
            f"over the limit of {limit}")
    if arc not in diagram.all_arcs():
        raise ValueError(f"arc {arc} is not an arc of the diagram")
    core = _cube_ranks(_Cube(diagram, basepoint_arc=arc))
    return sum(core.values()) * (1 << diagram.free_loops)


def boundary_matrices(diagram: LinkDiagram, *, reduced: bool = False,
                      max_crossings: int | None = None) -> Dict[Tuple[int, int], BitMatrix]:
    """Boundary maps keyed by (level, j); rows are source generators.

    Consecutive levels share basis order, so d following d is the zero
    matrix exactly when rows compose to zero under BitMatrix product.
    """
    limit = crossing_limit(max_crossings)
    if diagram.crossing_count > limit:
        raise ValueError(
            f"diagram has {diagram.crossing_count} crossings, "
            f"over the limit of {limit}")
    bp = None
    if reduced:
        comps = diagram.components()
        if not comps:
            raise ValueError("reduced homology needs a component with crossings")
        bp = min(min(c) for c in comps)
    cube = _Cube(diagram, basepoint_arc=bp)
    out: Dict[Tuple[int, int], BitMatrix] = {}
    blocks_h = cube.blocks(0)
    for h in range(cube.n):
        blocks_next = cube.blocks(h + 1)
        for j, block in blocks_h.items():
            dst = blocks_next.get(j, {})
            rows = [0] * len(block)
            for (v, mask), idx in block.items():
                acc = 0
                for w, m2 in cube.push(v, mask):
                    acc ^= 1 << dst[(w, m2)]
                rows[idx] = acc
            out[(h, j)] = BitMatrix(len(block), max(len(dst), 1), rows)
        blocks_h = blocks_next
    return out


def rank_report(diagram: LinkDiagram, *, name: str | None = None,
                max_crossings: int | None = None) -> dict:
    """The rank report dictionary for one diagram."""
    return kh_ranks(diagram, max_crossings=max_crossings,
                    name=name if name is not None else diagram.name).to_dict()
