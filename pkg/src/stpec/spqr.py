"""SPQR-trees of biconnected graphs, rooted at a Q-node.

The decomposition follows the classical route: split along multiple edges
and separation pairs until only bonds, triangles and triconnected pieces
remain, then merge adjacent bonds and adjacent polygons. This is quadratic
or worse, which is fine for the graph sizes the solver handles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import networkx as nx

from .digraph import Digraph, GraphError, is_biconnected

REF = -1  # slot id of a skeleton's reference edge


@dataclass
class SpqrNode:
    id: int
    kind: str  # "S", "P", "R" or "Q"
    poles: tuple[int, int]
    # (x, y, slot): slot indexes ``children`` or is REF
    skeleton: list[tuple[int, int, int]] = field(default_factory=list)
    children: list[int] = field(default_factory=list)
    parent: int | None = None
    edge: tuple[int, int] | None = None  # Q-nodes only: the oriented edge of G

    @property
    def skeleton_vertices(self) -> list[int]:
        seen = []
        for x, y, _ in self.skeleton:
            for w in (x, y):
                if w not in seen:
                    seen.append(w)
        return seen


@dataclass
class SpqrTree:
    graph: Digraph
    nodes: list[SpqrNode]
    root: int
    ref_edge: tuple[int, int]

    def node(self, i: int) -> SpqrNode:
        return self.nodes[i]

    def postorder(self) -> list[int]:
        order, stack = [], [(self.root, False)]
        while stack:
            i, done = stack.pop()
            if done:
                order.append(i)
                continue
            stack.append((i, True))
            for c in reversed(self.nodes[i].children):
                stack.append((c, False))
        return order

    def subtree_edges(self, i: int) -> list[tuple[int, int]]:
        out, stack = [], [i]
        while stack:
            nd = self.nodes[stack.pop()]
            if nd.kind == "Q" and nd.id != self.root:
                out.append(nd.edge)
            stack.extend(nd.children)
        return sorted(out)

    def dump(self) -> str:
        """Indented text rendering, one node per line."""
        lines = []

        def rec(i, depth):
            nd = self.nodes[i]
            pad = "  " * depth
            if nd.kind == "Q":
                lines.append(f"{pad}Q poles={nd.poles} edge={nd.edge[0]}->{nd.edge[1]}")
            else:
                sk = " ".join(
                    f"{x}-{y}{'*' if s == REF else ('r' if self.nodes[nd.children[s]].kind == 'Q' else 'v')}"
                    for x, y, s in nd.skeleton
                )
                lines.append(f"{pad}{nd.kind} poles={nd.poles} skel=[{sk}]")
            for c in nd.children:
                rec(c, depth + 1)

        rec(self.root, 0)
        return "\n".join(lines) + "\n"


# -- split components -------------------------------------------------------

class _Split:
    def __init__(self, g: Digraph):
        self.ends: dict[int, tuple[int, int]] = {i: e for i, e in enumerate(g.edges)}
        self.m = g.m
        self.partner: dict[int, int] = {}
        self.next_id = g.m

    def virtual_pair(self, x, y):
        a, b = self.next_id, self.next_id + 1
        self.next_id += 2
        self.ends[a] = self.ends[b] = (x, y)
        self.partner[a], self.partner[b] = b, a
        return a, b

    def is_real(self, eid):
        return eid < self.m


def _vertices(split, comp):
    vs = set()
    for e in comp:
        vs.update(split.ends[e])
    return sorted(vs)


def _separation_classes(split, comp, a, b):
    parent = {e: e for e in comp}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_vertex: dict[int, list[int]] = {}
    for e in comp:
        for w in split.ends[e]:
            if w != a and w != b:
                by_vertex.setdefault(w, []).append(e)
    for es in by_vertex.values():
        for e in es[1:]:
            parent[find(e)] = find(es[0])
    classes: dict[int, list[int]] = {}
    for e in comp:
        classes.setdefault(find(e), []).append(e)
    return sorted(classes.values(), key=lambda c: min(c))


def _try_split(split, comp):
    groups: dict[frozenset, list[int]] = {}
    for e in comp:
        groups.setdefault(frozenset(split.ends[e]), []).append(e)
    for key in sorted(groups, key=lambda k: sorted(k)):
        grp = groups[key]
        if len(grp) >= 2 and len(grp) < len(comp):
            x, y = split.ends[grp[0]]
            v1, v2 = split.virtual_pair(x, y)
            rest = [e for e in comp if e not in grp]
            return [grp + [v1], rest + [v2]]
    vs = _vertices(split, comp)
    for a, b in itertools.combinations(vs, 2):
        classes = _separation_classes(split, comp, a, b)
        if len(classes) < 2:
            continue
        if len(classes) == 2 and min(len(c) for c in classes) == 1:
            continue
        if len(classes) == 3 and all(len(c) == 1 for c in classes):
            continue
        big = next(c for c in classes if len(c) >= 2)
        rest = [e for e in comp if e not in big]
        v1, v2 = split.virtual_pair(a, b)
        return [big + [v1], rest + [v2]]
    return None


def _comp_type(split, comp):
    vs = _vertices(split, comp)
    if len(vs) == 2:
        return "P"
    deg = {v: 0 for v in vs}
    for e in comp:
        for w in split.ends[e]:
            deg[w] += 1
    if len(comp) == len(vs) and all(d == 2 for d in deg.values()):
        return "S"
    return "R"


def triconnected_components(g: Digraph):
    """Return ``(split, comps)`` with comps a list of ``(type, edge-ids)``."""
    split = _Split(g)
    work = [list(range(g.m))]
    final = []
    while work:
        comp = work.pop()
        parts = _try_split(split, comp)
        if parts is None:
            final.append(comp)
        else:
            work.extend(parts)
    comps = [[_comp_type(split, c), c] for c in final]
    merged = True
    while merged:
        merged = False
        owner = {e: i for i, (_, c) in enumerate(comps) for e in c}
        for i, (ti, ci) in enumerate(comps):
            for e in ci:
                if split.is_real(e):
                    continue
                j = owner[split.partner[e]]
                if j != i and comps[j][0] == ti and ti in "SP":
                    p = split.partner[e]
                    new = [x for x in ci if x != e] + [x for x in comps[j][1] if x != p]
                    comps[i] = [ti, new]
                    comps.pop(j)
                    merged = True
                    break
            if merged:
                break
    return split, [(t, sorted(c)) for t, c in comps]


# -- rooted tree ------------------------------------------------------------

def _chain_from(split, comp, ref, u, v):
    """Order the non-reference edges of a polygon as a walk from u to v."""
    rest = [e for e in comp if e != ref]
    order, cur, used = [], u, set()
    while cur != v or len(order) < len(rest):
        e = next(e for e in rest if e not in used and cur in split.ends[e])
        used.add(e)
        x, y = split.ends[e]
        nxt = y if x == cur else x
        order.append((e, cur, nxt))
        cur = nxt
    return order


def build_spqr(g: Digraph, ref_edge) -> SpqrTree:
    """SPQR-tree of ``g`` rooted at the Q-node of ``ref_edge``.

    ``ref_edge`` is an edge index or a ``(tail, head)`` pair. S-nodes are
    binarized left to right.
    """
    if g.m == 0 or not is_biconnected(g):
        raise GraphError("graph is not biconnected")
    if isinstance(ref_edge, int):
        eid = ref_edge
    else:
        eid = g.edges.index(tuple(ref_edge))
    e = g.edges[eid]
    split, comps = triconnected_components(g)
    owner = {x: i for i, (_, c) in enumerate(comps) for x in c}
    nodes: list[SpqrNode] = []

    def new(kind, poles, parent, edge=None):
        nd = SpqrNode(len(nodes), kind, poles, parent=parent, edge=edge)
        nodes.append(nd)
        return nd

    def build_series(chain, poles, parent):
        nd = new("S", poles, parent)
        nd.skeleton.append((poles[0], poles[1], REF))
        (e1, a1, b1) = chain[0]
        add_child(nd, a1, b1, e1)
        if len(chain) == 2:
            e2, a2, b2 = chain[1]
            add_child(nd, a2, b2, e2)
        else:
            slot = len(nd.children)
            sub = build_series(chain[1:], (b1, poles[1]), nd.id)
            nd.children.append(sub)
            nd.skeleton.append((b1, poles[1], slot))
        return nd.id

    def build_comp(ci, ref, poles, parent):
        kind, comp = comps[ci]
        u, v = poles
        if kind == "S":
            chain = _chain_from(split, comp, ref, u, v)
            return build_series(chain, poles, parent)
        nd = new(kind, poles, parent)
        nd.skeleton.append((u, v, REF))
        for x in comp:
            if x == ref:
                continue
            a, b = split.ends[x]
            if kind == "P":
                a, b = u, v
            add_child(nd, a, b, x)
        return nd.id

    def add_child(nd, x, y, eid_child):
        slot = len(nd.children)
        if split.is_real(eid_child):
            q = new("Q", (x, y), nd.id, edge=g.edges[eid_child])
            nd.children.append(q.id)
        else:
            p = split.partner[eid_child]
            c = build_comp(owner[p], p, (x, y), nd.id)
            nd.children.append(c)
        nd.skeleton.append((x, y, slot))

    root = new("Q", e, None, edge=e)
    ci = owner[eid]
    kind, comp = comps[ci]
    if len(comp) == 1:
        q = new("Q", e, root.id, edge=e)
        root.children.append(q.id)
    else:
        root.children.append(build_comp(ci, eid, e, root.id))
    return SpqrTree(g, nodes, root.id, e)


def pertinent_graph(t: SpqrTree, i: int) -> Digraph:
    if i == t.root:
        raise ValueError("the root has no pertinent graph")
    return Digraph(t.graph.n, tuple(t.subtree_edges(i)))


# -- skeleton embeddings ------------------------------------------------------
#
# An embedding is a list of faces; a face is a cyclic list of darts
# ``(a, b, slot)`` traversed in a consistent orientation. The face holding the
# reference dart ``v -> u`` carries the node's first half-boundary.

def _faces_from_rotation(rot, slot_of):
    pos = {v: {w: i for i, w in enumerate(r)} for v, r in rot.items()}
    seen, faces = set(), []
    for v in sorted(rot):
        for w in rot[v]:
            if (v, w) in seen:
                continue
            face, d = [], (v, w)
            while d not in seen:
                seen.add(d)
                a, b = d
                face.append((a, b, slot_of[frozenset((a, b))]))
                r = rot[b]
                d = (b, r[(pos[b][a] + 1) % len(r)])
            faces.append(face)
    return faces


def p_node_faces(u, v, perm):
    """Faces of a P-node skeleton whose children appear in order ``perm``."""
    faces = [[(v, u, REF), (u, v, perm[0])]]
    for a, b in zip(perm, perm[1:]):
        faces.append([(v, u, a), (u, v, b)])
    faces.append([(v, u, perm[-1]), (u, v, REF)])
    return faces


def skeleton_embeddings(node: SpqrNode, order=None) -> Iterator[list[list[tuple[int, int, int]]]]:
    """Yield the embeddings of a node's skeleton as face lists.

    P-nodes give one embedding per permutation of the non-reference edges
    (``order`` restricts the permuted slots), R-nodes give the embedding and
    its flip, S-nodes give their single embedding.
    """
    u, v = node.poles
    if node.kind == "Q":
        return
    if node.kind == "S":
        (_, b1, s1), (a2, _, s2) = node.skeleton[1], node.skeleton[2]
        yield [[(u, b1, s1), (a2, v, s2), (v, u, REF)],
               [(v, a2, s2), (b1, u, s1), (u, v, REF)]]
        return
    if node.kind == "P":
        slots = list(range(len(node.children))) if order is None else list(order)
        for perm in itertools.permutations(slots):
            yield p_node_faces(u, v, perm)
        return
    h = nx.Graph()
    slot_of = {}
    for x, y, s in node.skeleton:
        h.add_edge(x, y)
        slot_of[frozenset((x, y))] = s
    ok, emb = nx.check_planarity(h)
    if not ok:
        raise GraphError("rigid skeleton is not planar")
    rot = {w: list(emb.neighbors_cw_order(w)) for w in sorted(h.nodes)}
    yield _faces_from_rotation(rot, slot_of)
    yield _faces_from_rotation({w: r[::-1] for w, r in rot.items()}, slot_of)
