"""Brute-force reference solvers used to cross-check the DP on small inputs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .digraph import Digraph, is_acyclic
from .planarity import is_st_planar

MAX_BRUTE_VERTICES = 10
MAX_EXHAUSTIVE_VERTICES = 6


@dataclass(frozen=True)
class OracleResult:
    minimum: int | None
    witness: tuple[tuple[int, int], ...] | None
    nodes_explored: int


def candidate_edges(g: Digraph) -> list[tuple[int, int]]:
    """Oriented pairs that can be added: non-adjacent, no self-loops."""
    return [(a, b) for a in range(g.n) for b in range(g.n)
            if a != b and not g.adjacent(a, b)]


def _counts(g: Digraph, extra):
    indeg = [0] * g.n
    outdeg = [0] * g.n
    for a, b in itertools.chain(g.edges, extra):
        outdeg[a] += 1
        indeg[b] += 1
    return sum(1 for v in range(g.n) if indeg[v] == 0), sum(1 for v in range(g.n) if outdeg[v] == 0)


def brute_force_min_completion(g: Digraph, k_max: int) -> OracleResult:
    """Smallest set of at most ``k_max`` added edges making ``g`` st-planar.

    Sets are tried by increasing size, and within a size in lexicographic
    order, so the witness is the lexicographically first minimum set.
    """
    if g.n > MAX_BRUTE_VERTICES:
        raise ValueError(f"oracle limited to {MAX_BRUTE_VERTICES} vertices, got {g.n}")
    if not is_acyclic(g):
        return OracleResult(None, None, 0)
    cands = candidate_edges(g)
    explored = 0
    for size in range(k_max + 1):
        for extra in itertools.combinations(cands, size):
            pairs = {frozenset(e) for e in extra}
            if len(pairs) != size:
                continue  # both orientations of one pair
            explored += 1
            if _counts(g, extra) != (1, 1):
                continue
            h = g.with_edges(extra)
            if is_st_planar(h):
                return OracleResult(size, tuple(sorted(extra)), explored)
    return OracleResult(None, None, explored)


def _rotation_systems(g: Digraph):
    nbrs = [sorted(set(g.out_adj[v]) | set(g.in_adj[v])) for v in range(g.n)]
    per_vertex = []
    for ns in nbrs:
        if len(ns) <= 2:
            per_vertex.append([tuple(ns)])
        else:
            first = ns[0]
            per_vertex.append([(first,) + p for p in itertools.permutations(ns[1:])])
    return itertools.product(*per_vertex)


def exhaustive_st_check(g: Digraph) -> bool:
    """st-planarity decided by enumerating every rotation system.

    Independent of the co-facial shortcut in :func:`is_st_planar`; only
    feasible for tiny graphs.
    """
    if g.n > MAX_EXHAUSTIVE_VERTICES:
        raise ValueError(f"exhaustive check limited to {MAX_EXHAUSTIVE_VERTICES} vertices")
    if g.n == 0 or not is_acyclic(g) or any(g.degree(v) == 0 for v in range(g.n)):
        return False
    sw = g.switches
    if sw.n_sources != 1 or sw.n_sinks != 1:
        return False
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False  # too many edges for any planar embedding
    s, t = sw.sources[0], sw.sinks[0]
    for rot in _rotation_systems(g):
        faces = _face_vertex_sets(rot)
        if g.n - g.m + len(faces) != 2:
            continue
        if any(s in f and t in f for f in faces):
            return True
    return False


def _face_vertex_sets(rot):
    """Vertex sets of the faces traced by a rotation system."""
    pos = [{w: i for i, w in enumerate(r)} for r in rot]
    seen, faces = set(), []
    for v, r in enumerate(rot):
        for w in r:
            if (v, w) in seen:
                continue
            face, (a, b) = set(), (v, w)
            while (a, b) not in seen:
                seen.add((a, b))
                face.add(a)
                nb = rot[b]
                a, b = b, nb[(pos[b][a] + 1) % len(nb)]
            faces.append(face)
    return faces
