"""Angle assignments, path signatures and half-boundaries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .digraph import Digraph
from .planarity import FaceWalk, PlanarEmbedding

SRC = "SRC"
SNK = "SNK"
SRC_L = "SRC_L"
SNK_L = "SNK_L"
NON = "NON"  # pass-through vertex: one edge in, one out along the walk

_GLYPH = {SRC: "σ", SNK: "τ", SRC_L: "σℓ", SNK_L: "τℓ"}
_LOCAL = {SRC: SRC_L, SNK: SNK_L}


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...] = ()

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __str__(self):
        return " ".join(f"{_GLYPH[k]}{w}" for k, w in self.symbols) or "∅"

    @classmethod
    def from_walk(cls, kinds: Iterable[tuple[int, str]]) -> "Signature":
        """Drop pass-through entries from ``(vertex, kind)`` pairs."""
        return cls(tuple((k, w) for w, k in kinds if k != NON))

    def reversed(self) -> "Signature":
        return Signature(self.symbols[::-1])


@dataclass(frozen=True)
class HalfBoundary:
    path: tuple[int, ...]
    bifacial: frozenset = frozenset()

    @property
    def interior(self) -> tuple[int, ...]:
        return self.path[1:-1]


def edge_dir(g: Digraph, w: int, x: int) -> str:
    """``'in'`` if the edge between ``w`` and ``x`` points into ``w``."""
    if g.has_edge(x, w):
        return "in"
    if g.has_edge(w, x):
        return "out"
    raise KeyError(f"no edge between {w} and {x}")


def vertex_kind(g: Digraph, prev: int, w: int, nxt: int) -> str:
    """Symbol for interior vertex ``w`` entered from ``prev``, left to ``nxt``."""
    a, b = edge_dir(g, w, prev), edge_dir(g, w, nxt)
    if a != b:
        return NON
    switch = g.switches.is_switch(w)
    if a == "out":
        return SRC if switch else SRC_L
    return SNK if switch else SNK_L


def path_kinds(g: Digraph, path) -> tuple[tuple[int, str], ...]:
    return tuple((path[i], vertex_kind(g, path[i - 1], path[i], path[i + 1]))
                 for i in range(1, len(path) - 1))


def signature_of_path(g: Digraph, path) -> Signature:
    if isinstance(path, HalfBoundary):
        path = path.path
    return Signature.from_walk(path_kinds(g, path))


def is_short(sig: Signature, k: int) -> bool:
    return len(sig) <= 4 * k + 2


def restrict_signature(sig: Signature, bifacial, plus_inner) -> Signature:
    """Demote ``σ``/``τ`` at bifacial vertices whose +1 now sits in an inner face.

    ``plus_inner`` holds the vertices whose +1 angle the internal assignment
    placed in an inner face of the enclosing pertinent graph.
    """
    if not any(k in _LOCAL and w in bifacial for k, w in sig):
        return sig
    return Signature(tuple(
        (_LOCAL[k], w) if k in _LOCAL and w in bifacial and w in plus_inner else (k, w)
        for k, w in sig
    ))


def half_boundaries(g_nu: Digraph, emb: PlanarEmbedding, u: int, v: int):
    """The two half-boundaries ``(B_uv, B_vu)`` of the external face."""
    walk = emb.faces[emb.external_face].vertices
    if u not in walk or v not in walk:
        raise ValueError("poles must lie on the external face")
    i = walk.index(u)
    walk = walk[i:] + walk[:i]
    j = walk.index(v)
    b_uv = tuple(walk[: j + 1])
    b_vu = tuple(walk[j:] + [u])
    both = frozenset(b_uv[1:-1]) & frozenset(b_vu[1:-1])
    return HalfBoundary(b_uv, both), HalfBoundary(b_vu, both)


# -- whole-graph angle assignments --------------------------------------------

def is_switch_angle(triple) -> bool:
    v, (a1, b1), (a2, b2) = triple
    return (b1 == v) == (b2 == v)


def angles(emb: PlanarEmbedding):
    """All angles as ``((vertex, face_id, position), is_switch_angle)``."""
    for f in emb.faces:
        for i, tr in enumerate(f.boundary):
            yield (tr[0], f.face_id, i), is_switch_angle(tr)


@dataclass(frozen=True)
class AngleAssignment:
    labels: Mapping[tuple[int, int, int], int]

    def __getitem__(self, key):
        return self.labels[key]


def check_upward_face(face: FaceWalk, labels, is_external: bool) -> bool:
    if isinstance(labels, AngleAssignment):
        labels = labels.labels
    total = 0
    for i, tr in enumerate(face.boundary):
        lab = labels[(tr[0], face.face_id, i)]
        if is_switch_angle(tr):
            if lab not in (-1, 1):
                return False
        elif lab != 0:
            return False
        total += lab
    return total == (2 if is_external else -2)


def check_upward_vertex(g: Digraph, emb: PlanarEmbedding, labels, v: int) -> bool:
    if isinstance(labels, AngleAssignment):
        labels = labels.labels
    labs = [labels[(tr[0], f.face_id, i)]
            for f in emb.faces for i, tr in enumerate(f.boundary) if tr[0] == v]
    if g.switches.is_switch(v):
        return labs.count(1) == 1 and labs.count(-1) == len(labs) - 1
    return labs.count(0) == 2 and labs.count(-1) == len(labs) - 2


def is_upward_assignment(emb: PlanarEmbedding, labels) -> bool:
    g = emb.graph
    return (all(check_upward_face(f, labels, f.face_id == emb.external_face) for f in emb.faces)
            and all(check_upward_vertex(g, emb, labels, v) for v in range(g.n)))
