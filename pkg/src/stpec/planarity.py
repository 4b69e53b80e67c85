"""Combinatorial embeddings, face walks and the st-planarity test."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .digraph import Digraph, is_acyclic


@dataclass(frozen=True)
class FaceWalk:
    """A closed walk around one face.

    ``boundary`` holds ``(vertex, entering_edge, leaving_edge)`` triples in
    walk order; edges are the graph's ``(tail, head)`` pairs.
    """

    face_id: int
    boundary: tuple[tuple[int, tuple[int, int], tuple[int, int]], ...]
    external: bool = False

    @property
    def vertices(self) -> list[int]:
        return [t[0] for t in self.boundary]

    def __len__(self):
        return len(self.boundary)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(t[2] for t in self.boundary)


@dataclass(frozen=True)
class PlanarEmbedding:
    """Rotation system of ``graph`` plus the index of the external face."""

    graph: Digraph
    rotation: tuple[tuple[int, ...], ...]
    external_face: int = 0

    @cached_property
    def _position(self):
        return tuple({w: i for i, w in enumerate(r)} for r in self.rotation)

    def next_dart(self, a: int, b: int) -> tuple[int, int]:
        rot = self.rotation[b]
        return b, rot[(self._position[b][a] + 1) % len(rot)]

    @cached_property
    def faces(self) -> tuple[FaceWalk, ...]:
        return tuple(enumerate_faces(self))

    def with_external(self, face_id: int) -> "PlanarEmbedding":
        return PlanarEmbedding(self.graph, self.rotation, face_id)

    def mirror(self) -> "PlanarEmbedding":
        return PlanarEmbedding(self.graph, tuple(tuple(reversed(r)) for r in self.rotation),
                               self.external_face)

    def euler_ok(self) -> bool:
        return self.graph.n - self.graph.m + len(self.faces) == 2


def _oriented(g: Digraph, a: int, b: int) -> tuple[int, int]:
    return (a, b) if g.has_edge(a, b) else (b, a)


def _face_darts(emb: PlanarEmbedding):
    seen = set()
    walks = []
    darts = sorted((v, w) for v, r in enumerate(emb.rotation) for w in r)
    for start in darts:
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = emb.next_dart(*d)
        walks.append(walk)
    return walks


def enumerate_faces(emb: PlanarEmbedding) -> list[FaceWalk]:
    g = emb.graph
    out = []
    for fid, darts in enumerate(_face_darts(emb)):
        triples = []
        for i, (a, b) in enumerate(darts):
            pa, pb = darts[i - 1]
            triples.append((a, _oriented(g, pa, pb), _oriented(g, a, b)))
        out.append(FaceWalk(fid, tuple(triples), fid == emb.external_face))
    return out


def test_planarity(g: Digraph) -> PlanarEmbedding | None:
    """Some planar embedding of ``g``, or ``None`` if it is not planar."""
    ok, emb = nx.check_planarity(g.undirected())
    if not ok:
        return None
    data = emb.get_data()
    rotation = tuple(tuple(data.get(v, ())) for v in range(g.n))
    return PlanarEmbedding(g, rotation, 0)


test_planarity.__test__ = False  # not a pytest test despite the name


def is_st_planar(g: Digraph) -> tuple[int, int] | None:
    """Return ``(s, t)`` when ``g`` is st-planar, else ``None``.

    Uses the co-facial criterion: a planar acyclic digraph with single source
    ``s`` and single sink ``t`` has an embedding with both on one face iff
    adding the undirected edge ``st`` keeps it planar.
    """
    if g.n == 0 or not is_acyclic(g):
        return None
    if any(g.degree(v) == 0 for v in range(g.n)):
        return None
    sw = g.switches
    if sw.n_sources != 1 or sw.n_sinks != 1:
        return None
    s, t = sw.sources[0], sw.sinks[0]
    h = g.undirected()
    h.add_edge(s, t)
    if not nx.check_planarity(h)[0]:
        return None
    return s, t


def st_conditions(g: Digraph) -> dict[str, bool]:
    """Which of the three st-planar conditions hold (acyclic, one source and
    sink, source and sink co-facial)."""
    acyclic = is_acyclic(g)
    try:
        sw = g.switches
        single = sw.n_sources == 1 and sw.n_sinks == 1
    except ValueError:
        single = False
    cofacial = False
    if single:
        h = g.undirected()
        h.add_edge(sw.sources[0], sw.sinks[0])
        cofacial = nx.check_planarity(h)[0]
    return {"acyclic": acyclic, "single_source_sink": single, "cofacial": cofacial}
