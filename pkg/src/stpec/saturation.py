"""Minimum saturating edge sets inside a single face.

A face is handled as a ring of corners. Each corner is one angle of the face:
the vertex, the directions (relative to that vertex) of the boundary edges
before and after it in walk order, and its label in {-1, 0, +1}.

Added edges are chords of the ring. A chord set is accepted when every +1
switch that has to disappear receives an edge of the opposite direction in
its +1 angle, no two chords cross, no chord duplicates an existing
adjacency, and the subdivided face still carries an upward labelling: the
split angles get labels forced by their edge directions and every new
region sums to -2 (or +2 for the one region left outside, on the external
face).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .planarity import FaceWalk


class Corner(NamedTuple):
    vertex: int
    before: str  # "in"/"out": edge from the previous corner, seen from vertex
    after: str  # edge to the next corner, seen from vertex
    label: int

    @property
    def switch_angle(self) -> bool:
        return self.before == self.after

    @property
    def source_like(self) -> bool:
        return self.before == self.after == "out"

    @property
    def sink_like(self) -> bool:
        return self.before == self.after == "in"


@dataclass(frozen=True)
class Slot:
    vertex: int  # representative
    label: int
    indices: tuple[int, ...]  # corner positions covered

    @property
    def is_run(self) -> bool:
        return self.label == 0


@dataclass(frozen=True)
class SimplifiedBoundary:
    slots: tuple[Slot, ...]
    n_switch_angles: int

    def __len__(self):
        return len(self.slots)


@dataclass(frozen=True)
class Saturation:
    count: float  # math.inf when no valid set exists within the budget
    edges: tuple[tuple[int, int], ...] = ()
    kept: tuple[int, int] | None = None

    @property
    def feasible(self) -> bool:
        return self.count != math.inf

    def __iter__(self):
        # unpacks as (count, witness) or (count, witness, kept)
        yield self.count
        yield self.edges
        if self.kept is not None:
            yield self.kept


INFEASIBLE = Saturation(math.inf)


def corners_of(face: FaceWalk, labels) -> tuple[Corner, ...]:
    """Build the corner ring of ``face`` from an angle labelling.

    ``labels`` maps ``(vertex, face_id, position)`` or plain positions to labels.
    """
    out = []
    for i, (v, e_in, e_out) in enumerate(face.boundary):
        lab = labels[(v, face.face_id, i)] if (v, face.face_id, i) in labels else labels[i]
        out.append(Corner(v, "in" if e_in[1] == v else "out",
                          "in" if e_out[1] == v else "out", lab))
    return tuple(out)


def _ring(face, labels):
    if isinstance(face, FaceWalk):
        return corners_of(face, labels)
    return tuple(Corner(*c) for c in face)


def simplify_boundary(face, labels=None, representative: str = "first") -> SimplifiedBoundary:
    """Collapse maximal runs of non-switch angles into one slot each."""
    ring = _ring(face, labels)
    n = len(ring)
    zero = [c.label == 0 for c in ring]
    if all(zero):
        return SimplifiedBoundary((Slot(ring[0].vertex, 0, tuple(range(n))),), 0)
    # rotate so that the ring starts right after a switch angle
    start = next(i for i in range(n) if not zero[i])
    order = [(start + 1 + j) % n for j in range(n)]
    slots, run = [], []
    for i in order:
        if zero[i]:
            run.append(i)
            continue
        if run:
            slots.append(run)
            run = []
        slots.append([i])
    if run:
        slots.append(run)
    out = []
    for idx in slots:
        rep = idx[0] if representative == "first" else idx[-1]
        out.append(Slot(ring[rep].vertex, ring[idx[0]].label, tuple(idx)))
    out.sort(key=lambda s: s.indices[0])
    return SimplifiedBoundary(tuple(out), n - sum(zero))


def _crossing(a, b, c, d) -> bool:
    a, b = min(a, b), max(a, b)
    c, d = min(c, d), max(c, d)
    return a < c < b < d or c < a < d < b


def _region_sums_ok(ring, chords, must, kept, external):
    """Validate the labelling of the subdivided face for a concrete chord set."""
    n = len(ring)
    at = [[] for _ in range(n)]
    for i, j in chords:
        at[i].append((j, "out"))
        at[j].append((i, "in"))
    items, dirs = [], []
    for i, c in enumerate(ring):
        chs = sorted(at[i], key=lambda x: (x[0] - i) % n)
        items.append([(i + 1) % n] + [j for j, _ in chs] + [(i - 1) % n])
        dirs.append([c.after] + [d for _, d in chs] + [c.before])
    pos = [{w: t for t, w in enumerate(it)} for it in items]

    piece_labels = []  # per corner: list of candidate label vectors
    for i, c in enumerate(ring):
        dd = dirs[i]
        trans = [dd[t] != dd[t + 1] for t in range(len(dd) - 1)]
        nt = sum(trans)
        if c.label == 0:
            if nt != 1:
                return False
            piece_labels.append([[0 if x else -1 for x in trans]])
        elif c.label == -1:
            if nt:
                return False
            piece_labels.append([[-1] * len(trans)])
        elif i in must:
            if nt != 2:
                return False
            piece_labels.append([[0 if x else -1 for x in trans]])
        elif i in kept:
            if nt:
                return False
            opts = []
            for p in range(len(trans)):
                v = [-1] * len(trans)
                v[p] = 1
                opts.append(v)
            piece_labels.append(opts)
        else:
            return False

    regions, seen = [], set()
    for i in range(n):
        for t in range(len(items[i]) - 1):
            if (i, t) in seen:
                continue
            reg, cur = [], (i, t)
            while cur not in seen:
                seen.add(cur)
                reg.append(cur)
                a, s = cur
                j = items[a][s]
                cur = (j, pos[j][a] - 1)
            regions.append(reg)

    choice_corners = [i for i in range(n) if len(piece_labels[i]) > 1]
    for combo in itertools.product(*(range(len(piece_labels[i])) for i in choice_corners)):
        pick = dict(zip(choice_corners, combo))
        sums = [sum(piece_labels[a][pick.get(a, 0)][s] for a, s in reg) for reg in regions]
        if external:
            if sums.count(2) == 1 and sums.count(-2) == len(sums) - 1:
                return True
        elif all(x == -2 for x in sums):
            return True
    return False


def _solve(ring, adjacent, must, kept, external, budget):
    simp = simplify_boundary(ring)
    slots = simp.slots
    slot_of = {}
    for si, s in enumerate(slots):
        for i in s.indices:
            slot_of[i] = si

    def allowed(i, d):
        c = ring[i]
        if c.label == 0:
            return True
        if i in must:
            return True
        return d == c.before  # keep the angle free of direction changes

    def saturates(i, d):
        c = ring[i]
        return i in must and d != c.before

    cands = []
    for a, b in itertools.permutations(range(len(slots)), 2):
        sa, sb = slots[a], slots[b]
        # chord sa -> sb: "out" at sa, "in" at sb
        ia = sa.indices[0] if not sa.is_run else None
        ib = sb.indices[0] if not sb.is_run else None
        if (ia is not None and not allowed(ia, "out")) or (ib is not None and not allowed(ib, "in")):
            continue
        if not ((ia is not None and saturates(ia, "out")) or (ib is not None and saturates(ib, "in"))):
            continue
        cands.append((a, b))

    need = set(must)
    for size in range(0, min(budget, len(cands)) + 1):
        for combo in itertools.combinations(cands, size):
            covered = set()
            for a, b in combo:
                for s, d in ((a, "out"), (b, "in")):
                    if not slots[s].is_run and saturates(slots[s].indices[0], d):
                        covered.add(slots[s].indices[0])
            if covered != need:
                continue
            pairs = {frozenset(x) for x in combo}
            if len(pairs) != len(combo):
                continue
            choices = [(slots[a].indices, slots[b].indices) for a, b in combo]
            for real in itertools.product(*(itertools.product(x, y) for x, y in choices)):
                if _valid_realization(ring, real, adjacent, must, kept, external):
                    edges = tuple(sorted((ring[i].vertex, ring[j].vertex) for i, j in real))
                    return Saturation(size, edges)
    return INFEASIBLE


def _valid_realization(ring, chords, adjacent, must, kept, external):
    verts = set()
    for i, j in chords:
        x, y = ring[i].vertex, ring[j].vertex
        key = frozenset((x, y))
        if x == y or key in adjacent or key in verts:
            return False
        verts.add(key)
    for (a, b), (c, d) in itertools.combinations(chords, 2):
        if _crossing(a, b, c, d):
            return False
    return _region_sums_ok(ring, chords, must, kept, external)


def _adjacency(ring, graph):
    vs = sorted({c.vertex for c in ring})
    adj = set()
    n = len(ring)
    for i in range(n):
        adj.add(frozenset((ring[i].vertex, ring[(i + 1) % n].vertex)))
    if graph is not None:
        for x, y in itertools.combinations(vs, 2):
            if graph.adjacent(x, y):
                adj.add(frozenset((x, y)))
    return frozenset(adj)


@lru_cache(maxsize=200_000)
def _inner_cached(ring, adjacent, budget):
    must = frozenset(i for i, c in enumerate(ring) if c.label == 1)
    return _solve(ring, adjacent, must, frozenset(), False, budget)


@lru_cache(maxsize=200_000)
def _outer_cached(ring, adjacent, budget):
    plus = [i for i, c in enumerate(ring) if c.label == 1]
    best = INFEASIBLE
    for s in plus:
        if not ring[s].source_like:
            continue
        for t in plus:
            if not ring[t].sink_like:
                continue
            must = frozenset(plus) - {s, t}
            cap = budget if best.count == math.inf else min(budget, int(best.count))
            res = _solve(ring, adjacent, must, frozenset((s, t)), True, cap)
            if not res.feasible:
                continue
            kept = (ring[s].vertex, ring[t].vertex)
            cand = Saturation(res.count, res.edges, kept)
            if _better(cand, best):
                best = cand
    return best


def _better(a: Saturation, b: Saturation) -> bool:
    if a.count != b.count:
        return a.count < b.count
    return (a.edges, a.kept) < (b.edges, b.kept)


def _default_budget(ring):
    return sum(1 for c in ring if c.label == 1)


def min_saturating_edges(face, labels=None, graph=None, budget: int | None = None) -> Saturation:
    """Fewest non-crossing edges inside an inner face saturating its +1 switches.

    ``graph`` supplies existing adjacencies to exclude; ``budget`` caps the
    search (the result is infeasible if more edges would be needed).
    """
    ring = _ring(face, labels)
    if budget is None:
        budget = _default_budget(ring)
    return _inner_cached(ring, _adjacency(ring, graph), budget)


def min_saturating_edges_external(face, labels=None, graph=None, budget: int | None = None) -> Saturation:
    """Like :func:`min_saturating_edges` for the external face, leaving one
    +1 source and one +1 sink unsaturated."""
    ring = _ring(face, labels)
    if budget is None:
        budget = _default_budget(ring)
    return _outer_cached(ring, _adjacency(ring, graph), budget)


def face_sum(ring: Sequence[Corner]) -> int:
    return sum(c.label for c in ring)
