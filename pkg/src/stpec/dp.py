"""Dynamic program over the SPQR-tree.

Each table maps a candidate tuple of a node to the cheapest internal
assignment of its pertinent graph that realises it. A candidate records the
two half-boundaries of the external face (their vertex paths and, per
interior vertex, the signature symbol or a pass-through marker), one flag per
pole telling whether that pole is still an active switch, and for
non-switch poles the number of non-switch angles already spent inside.

All node types are combined by one routine: lay the child half-boundaries
around the faces of an embedded skeleton, branch over where each undecided
switch puts its +1 angle, check the inner faces, price them with the face
saturation solver and read off the new half-boundaries.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable

from .digraph import Digraph, Reject, precheck
from .planarity import PlanarEmbedding, is_st_planar
from .saturation import Corner, min_saturating_edges, min_saturating_edges_external
from .spqr import REF, SpqrNode, SpqrTree, build_spqr, p_node_faces, skeleton_embeddings
from .upward import NON, SNK, SNK_L, SRC, SRC_L, Signature, edge_dir, is_short

log = logging.getLogger(__name__)

_LOCAL = {SRC: SRC_L, SNK: SNK_L}


@dataclass(frozen=True, order=True)
class Candidate:
    path1: tuple[int, ...]  # B_uv, u ... v
    kinds1: tuple[str, ...]  # one entry per interior vertex of path1
    path2: tuple[int, ...]  # B_vu, v ... u
    kinds2: tuple[str, ...]
    b1: bool  # pole u is still an active switch (always True for non-switches)
    b2: bool
    t1: int = 0  # non-switch angles of a non-switch pole u used inside
    t2: int = 0

    @property
    def sig1(self) -> Signature:
        return Signature.from_walk(zip(self.path1[1:-1], self.kinds1))

    @property
    def sig2(self) -> Signature:
        return Signature.from_walk(zip(self.path2[1:-1], self.kinds2))

    @property
    def empty_pair(self) -> bool:
        return not len(self.sig1) and not len(self.sig2)

    def mirror(self) -> "Candidate":
        return Candidate(self.path2[::-1], self.kinds2[::-1], self.path1[::-1], self.kinds1[::-1],
                         self.b1, self.b2, self.t1, self.t2)

    def __str__(self):
        return f"<{self.sig1} | {self.sig2} | {self.b1} {self.b2}>"


@dataclass(frozen=True)
class Entry:
    cost: int
    witness: tuple[tuple[int, int], ...] = ()

    def better_than(self, other: "Entry | None") -> bool:
        if other is None:
            return True
        return (self.cost, self.witness) < (other.cost, other.witness)


Table = dict  # Candidate -> Entry


@dataclass
class SolveResult:
    answer: bool
    min_edges: int | None = None
    witness: tuple[tuple[int, int], ...] | None = None
    reason: Reject | None = None
    per_edge: dict = field(default_factory=dict)  # ref edge -> min cost or None
    table_sizes: dict = field(default_factory=dict)  # ref edge -> [table sizes]

    def report(self) -> str:
        if self.reason is not None:
            return f"NO {self.reason}"
        if not self.answer:
            return "NO"
        return f"YES {self.min_edges}"


@dataclass
class _Ctx:
    g: Digraph
    k: int
    faces_allowed: frozenset | None = None  # fixed-embedding mode: facial edge sets
    outer_face: frozenset | None = None
    stats: dict = field(default_factory=dict)

    def note(self, key, n=1):
        self.stats[key] = self.stats.get(key, 0) + n


def _edge(g, a, b):
    return (a, b) if g.has_edge(a, b) else (b, a)


def _face_edges(g, ring):
    n = len(ring)
    return frozenset(_edge(g, ring[i].vertex, ring[(i + 1) % n].vertex) for i in range(n))


# -- leaf -------------------------------------------------------------------

def process_q_node(node: SpqrNode) -> Table:
    u, v = node.poles
    return {Candidate((u, v), (), (v, u), (), True, True): Entry(0)}


# -- shared combination step ----------------------------------------------------

def _pole_state(cand, poles, x):
    u_c, _ = poles
    return (cand.b1, cand.t1) if x == u_c else (cand.b2, cand.t2)


def _oriented_path(cand, poles, a):
    if a == poles[0]:
        return cand.path1, cand.kinds1, 1
    return cand.path2, cand.kinds2, 2


def _combine(ctx: _Ctx, faces, slot_poles, sel, poles, outer=None, crowd_limit=None):
    """Yield ``(candidate, cost, witness)`` for one skeleton embedding and one
    choice of child tuples.

    ``poles`` are the node's poles (empty at the root, where every vertex is
    complete). ``outer`` marks the face that is the external face of G at the
    root.
    """
    g, k = ctx.g, ctx.k
    sw = g.switches
    base = sum(e.cost for _, e in sel)
    if base > k:
        return

    # -- lay out faces and half-boundaries -------------------------------
    rings = []  # active faces: list of [vertex, before, after, ref]
    walks = {}
    child_locs: dict = {}
    junc_locs: dict = {}
    junc_angles: dict = {}  # x -> list of (is_switch_angle, location)

    def child_item(s, side, j, w, kind, loc):
        if kind in (SRC, SNK):
            child_locs.setdefault((s, w, kind), []).append(loc)
            return ("var", (s, w, kind), kind)
        if kind == NON:
            return ("fixed", 0, NON)
        return ("fixed", -1, kind)

    def junction_item(x, before, after, loc):
        switch_angle = before == after
        junc_angles.setdefault(x, []).append((switch_angle, loc))
        if not switch_angle:
            return ("fixed", 0, NON)
        kind = SRC if before == "out" else SNK
        if sw.is_switch(x):
            junc_locs.setdefault(x, []).append(loc)
            return ("var", ("j", x), kind)
        return ("fixed", -1, _LOCAL[kind])

    for fi, face in enumerate(faces):
        ref_at = next((i for i, d in enumerate(face) if d[2] == REF), None)
        darts = face if ref_at is None else face[ref_at + 1:] + face[:ref_at]
        paths = [_oriented_path(sel[s][0], slot_poles[s], a) + (s,) for a, b, s in darts]
        items = []
        cyclic = ref_at is None
        for i, (path, kinds, side, s) in enumerate(paths):
            if i > 0 or cyclic:
                prev = paths[i - 1][0]
                x = path[0]
                before = edge_dir(g, x, prev[-2])
                after = edge_dir(g, x, path[1])
                loc = ("f", fi, len(items)) if cyclic else ("w", fi, len(items))
                items.append((x, before, after, junction_item(x, before, after, loc)))
            for j in range(1, len(path) - 1):
                w = path[j]
                loc = ("f", fi, len(items)) if cyclic else ("w", fi, len(items))
                before = edge_dir(g, w, path[j - 1])
                after = edge_dir(g, w, path[j + 1])
                items.append((w, before, after, child_item(s, side, j, w, kinds[j - 1], loc)))
        if cyclic:
            rings.append((fi, items))
        else:
            which = 1 if (face[ref_at][0], face[ref_at][1]) == (poles[1], poles[0]) else 2
            start = poles[0] if which == 1 else poles[1]
            walks[which] = (fi, start, items)

    # -- per-vertex bookkeeping for skeleton vertices ------------------------
    touching: dict = {}
    for s, pp in enumerate(slot_poles):
        for x in set(pp):
            touching.setdefault(x, []).append(s)

    pole_t = {}
    junc_options = []
    for x in sorted(touching):
        states = [_pole_state(sel[s][0], slot_poles[s], x) for s in touching[x]]
        has_walk = any(loc[0] == "w" for loc in junc_locs.get(x, []))
        if sw.is_switch(x):
            taken = sum(1 for b, _ in states if not b)
            if taken > 1:
                return
            if taken == 1:
                continue
            face_locs = [loc for loc in junc_locs.get(x, []) if loc[0] == "f"]
            opts = [({loc}, frozenset()) for loc in face_locs]
            if x in poles or has_walk:
                opts.append((set(), frozenset(l for l in junc_locs.get(x, []) if l[0] == "w")))
            if not opts:
                return
            junc_options.append((x, opts))
        else:
            used = sum(t for _, t in states) + sum(1 for sa, _ in junc_angles.get(x, []) if not sa)
            if x in poles:
                if used > 2:
                    return
                pole_t[x] = used
            elif used != 2:
                return

    child_options = []
    for key, locs in sorted(child_locs.items()):
        if len(locs) == 1 or all(l[0] == "w" for l in locs):
            plus = {l for l in locs if l[0] == "f"}
            act = frozenset(l for l in locs if l[0] == "w")
            child_options.append((key, [(plus, act)]))
        else:
            opts = []
            for l in locs:
                opts.append(({l} if l[0] == "f" else set(), frozenset({l}) if l[0] == "w" else frozenset()))
            child_options.append((key, opts))

    # a face can only host a +1 if it has at least three other -1 candidates
    def minus_capacity(items, skip):
        return sum(1 for i, it in enumerate(items) if i != skip and
                   (it[3][0] == "var" or it[3][1] == -1))

    ring_items = {fi: items for fi, items in rings}
    pruned_junc = []
    for x, opts in junc_options:
        keep = []
        viable = 0
        for plus, act in opts:
            if plus:
                (loc,) = plus
                if minus_capacity(ring_items[loc[1]], loc[2]) < 3 and (outer is None or loc[1] != outer):
                    continue
                viable += 1
            keep.append((plus, act))
        if crowd_limit is not None and viable > crowd_limit:
            ctx.note("crowded_discard")
            return
        if not keep:
            return
        pruned_junc.append((x, keep))

    all_options = pruned_junc + child_options

    def face_rings(plus):
        out = []
        for fi, items in rings:
            ring = []
            for i, (w, before, after, ref) in enumerate(items):
                if ref[0] == "fixed":
                    lab = ref[1]
                else:
                    lab = 1 if ("f", fi, i) in plus else -1
                ring.append(Corner(w, before, after, lab))
            out.append((fi, tuple(ring)))
        return out

    for combo in itertools.product(*(opts for _, opts in all_options)):
        plus, active = set(), set()
        for p, a in combo:
            plus |= p
            active |= a
        rs = face_rings(plus)
        ok = True
        for fi, ring in rs:
            target = 2 if fi == outer else -2
            if sum(c.label for c in ring) != target:
                ok = False
                break
        if not ok:
            continue
        budget = k - base
        chords = []
        for fi, ring in rs:
            if ctx.faces_allowed is not None:
                fe = _face_edges(g, ring)
                if fe not in ctx.faces_allowed or (fi == outer and fe != ctx.outer_face):
                    ok = False
                    break
            if fi == outer:
                res = min_saturating_edges_external(ring, graph=g, budget=budget)
            else:
                res = min_saturating_edges(ring, graph=g, budget=budget)
            if not res.feasible:
                ok = False
                break
            budget -= int(res.count)
            chords.extend(res.edges)
        if not ok:
            continue
        cost = k - budget
        witness = tuple(sorted(set(chords).union(*(e.witness for _, e in sel))))
        if poles:
            cand = _read_candidate(ctx, poles, walks, plus, active, touching, sel, slot_poles,
                                   pole_t, junc_locs)
            if cand is None:
                continue
            yield cand, cost, witness
        else:
            yield None, cost, witness


def _read_candidate(ctx, poles, walks, plus, active, touching, sel, slot_poles, pole_t, junc_locs):
    k = ctx.k
    sw = ctx.g.switches
    out = {}
    for which in (1, 2):
        fi, start, items = walks[which]
        path = [start]
        kinds = []
        for i, (w, before, after, ref) in enumerate(items):
            path.append(w)
            if ref[0] == "fixed":
                kinds.append(ref[2])
            else:
                kind = ref[2]
                kinds.append(kind if ("w", fi, i) in active else _LOCAL[kind])
        path.append(poles[1] if which == 1 else poles[0])
        out[which] = (tuple(path), tuple(kinds))
    flags = []
    ts = []
    for x in poles:
        if sw.is_switch(x):
            states = [_pole_state(sel[s][0], slot_poles[s], x) for s in touching[x]]
            inside = (any(not b for b, _ in states)
                      or any(loc in plus for loc in junc_locs.get(x, ())))
            flags.append(not inside)
            ts.append(0)
        else:
            flags.append(True)
            ts.append(pole_t[x])
    cand = Candidate(out[1][0], out[1][1], out[2][0], out[2][1], flags[0], flags[1], ts[0], ts[1])
    if not (is_short(cand.sig1, k) and is_short(cand.sig2, k)):
        ctx.note("long_signature_discard")
        return None
    return cand


# -- node routines ------------------------------------------------------------

def _sorted_entries(table: Table):
    return sorted(table.items(), key=lambda kv: (kv[1].cost, kv[0]))


def _selections(options, k, i=0, acc=(), cost=0):
    """Cartesian product of child entries, cut off once the cost exceeds k."""
    if i == len(options):
        yield list(acc)
        return
    for cand, entry in options[i]:
        if cost + entry.cost > k:
            break  # entries are sorted by cost
        yield from _selections(options, k, i + 1, acc + ((cand, entry),), cost + entry.cost)


def _store(table: Table, cand: Candidate, cost: int, witness) -> None:
    entry = Entry(cost, witness)
    if entry.better_than(table.get(cand)):
        table[cand] = entry


def _children(tree: SpqrTree, node: SpqrNode):
    return [tree.nodes[c] for c in node.children]


def process_s_node(ctx: _Ctx, tree: SpqrTree, node: SpqrNode, tables) -> Table:
    kids = _children(tree, node)
    slot_poles = [c.poles for c in kids]
    (faces,) = list(skeleton_embeddings(node))
    out: Table = {}
    for sel in _selections([_sorted_entries(tables[c.id]) for c in kids], ctx.k):
        for cand, cost, wit in _combine(ctx, faces, slot_poles, sel, node.poles):
            _store(out, cand, cost, wit)
    return out


def prune_p_children(tree: SpqrTree, node: SpqrNode, tables, k: int):
    """Split P-node children into (retained, dropped) slot lists.

    Non-Q children whose tables only hold empty signature pairs are
    interchangeable; beyond ``4k + 11`` of them the surplus is dropped from
    the permutation search and glued next to a retained one.
    """
    t = 4 * k + 10
    empties = []
    for s, c in enumerate(node.children):
        nd = tree.nodes[c]
        if nd.kind != "Q" and tables[c] and all(cd.empty_pair for cd in tables[c]):
            empties.append(s)
    if len(empties) <= t + 1:
        return list(range(len(node.children))), []
    dropped = empties[t + 1:]
    return [s for s in range(len(node.children)) if s not in dropped], dropped


def process_p_node(ctx: _Ctx, tree: SpqrTree, node: SpqrNode, tables) -> Table:
    k = ctx.k
    kids = _children(tree, node)
    slot_poles = [c.poles for c in kids]
    u, v = node.poles
    retained, dropped = prune_p_children(tree, node, tables, k)
    anchor = next((s for s in retained if s in set(_empty_slots(tree, node, tables))), None)
    options = []
    for s, c in enumerate(kids):
        entries = _sorted_entries(tables[c.id])
        options.append(entries[:1] if s in dropped else entries)
    t = 4 * k + 10
    out: Table = {}
    for sel in _selections(options, k):
        if sum(1 for cand, _ in sel if not cand.empty_pair) > t:
            ctx.note("p_nonempty_discard")
            continue
        types = {s: _shape(ctx.g, sel[s][0], (u, v)) for s in retained}
        for perm in _distinct_orders(retained, types):
            if dropped:
                i = perm.index(anchor) + 1
                perm = perm[:i] + tuple(dropped) + perm[i:]
            faces = p_node_faces(u, v, perm)
            for cand, cost, wit in _combine(ctx, faces, slot_poles, sel, node.poles):
                _store(out, cand, cost, wit)
    return out


def _shape(g, cand: Candidate, poles):
    """The candidate with vertices renamed by first appearance, plus the
    adjacencies among them.

    Two P-node children with equal shapes are interchangeable: swapping them
    in a permutation renames vertices but changes no face check or cost.
    """
    order = list(poles)
    for w in cand.path1 + cand.path2:
        if w not in order:
            order.append(w)
    idx = {w: i for i, w in enumerate(order)}
    adj = tuple((i, j, g.has_edge(a, b)) for i, a in enumerate(order) for j, b in enumerate(order)
                if i < j and g.adjacent(a, b))
    return (tuple(idx[w] for w in cand.path1), tuple(idx[w] for w in cand.path2),
            cand.kinds1, cand.kinds2, cand.b1, cand.b2, cand.t1, cand.t2, adj)


def _distinct_orders(slots, types):
    """Orders of ``slots`` that differ in their sequence of types; slots of
    equal type always appear in increasing order."""
    groups: dict = {}
    for s in sorted(slots):
        groups.setdefault(types[s], []).append(s)
    keys = list(groups)
    used = [0] * len(keys)

    def rec(acc):
        if len(acc) == len(slots):
            yield tuple(acc)
            return
        for i, key in enumerate(keys):
            if used[i] < len(groups[key]):
                acc.append(groups[key][used[i]])
                used[i] += 1
                yield from rec(acc)
                used[i] -= 1
                acc.pop()

    return rec([])


def _empty_slots(tree, node, tables):
    return [s for s, c in enumerate(node.children)
            if tree.nodes[c].kind != "Q" and all(cd.empty_pair for cd in tables[c])]


def process_r_node(ctx: _Ctx, tree: SpqrTree, node: SpqrNode, tables) -> Table:
    k = ctx.k
    kids = _children(tree, node)
    slot_poles = [c.poles for c in kids]
    embeddings = list(skeleton_embeddings(node))
    out: Table = {}
    for sel in _selections([_sorted_entries(tables[c.id]) for c in kids], k):
        if sum(1 for cand, _ in sel if not cand.empty_pair) > 2 * k + 2:
            ctx.note("r_nonempty_discard")
            continue
        for faces in embeddings:
            for cand, cost, wit in _combine(ctx, faces, slot_poles, sel, node.poles,
                                            crowd_limit=4 * k + 5):
                _store(out, cand, cost, wit)
    return out


def compute_tables(ctx: _Ctx, tree: SpqrTree) -> dict:
    tables: dict = {}
    for i in tree.postorder():
        if i == tree.root:
            continue
        node = tree.nodes[i]
        if node.kind == "Q":
            tables[i] = process_q_node(node)
        elif node.kind == "S":
            tables[i] = process_s_node(ctx, tree, node, tables)
        elif node.kind == "P":
            tables[i] = process_p_node(ctx, tree, node, tables)
        else:
            tables[i] = process_r_node(ctx, tree, node, tables)
        log.debug("node %d (%s) poles=%s: %d entries", i, node.kind, node.poles, len(tables[i]))
    return tables


def _solve_root(ctx: _Ctx, tree: SpqrTree, tables):
    u, v = tree.ref_edge
    xi = tree.nodes[tree.nodes[tree.root].children[0]]
    slot_poles = [xi.poles, (u, v)]
    q = (Candidate((u, v), (), (v, u), (), True, True), Entry(0))
    faces = [[(u, v, 0), (v, u, 1)], [(v, u, 0), (u, v, 1)]]
    best = None
    for cand, entry in _sorted_entries(tables[xi.id]):
        for outer in (0, 1):
            for _, cost, wit in _combine(ctx, faces, slot_poles, [(cand, entry), q], (), outer=outer):
                e = Entry(cost, wit)
                if e.better_than(best):
                    best = e
    return best


def solve_rooted(g: Digraph, e, k: int, embedding: PlanarEmbedding | None = None,
                 trace: list | None = None):
    """Cheapest completion keeping reference edge ``e`` on the external face.

    Returns ``(cost, witness)`` or ``None`` when more than ``k`` edges are
    needed.
    """
    ctx = _make_ctx(g, k, embedding)
    tree = build_spqr(g, e)
    tables = compute_tables(ctx, tree)
    if trace is not None:
        trace.append((tree, tables, ctx.stats))
    best = _solve_root(ctx, tree, tables)
    if best is None:
        return None
    return best.cost, reconstruct_witness(tables, best)


def reconstruct_witness(tables, root_entry: Entry) -> list[tuple[int, int]]:
    """Edges recorded for an accepted root entry.

    Entries carry the chord sets chosen at every face below them, so the
    witness is read off directly.
    """
    return list(root_entry.witness)


def _make_ctx(g, k, embedding):
    if embedding is None:
        return _Ctx(g, k)
    faces = embedding.faces
    return _Ctx(g, k, frozenset(f.edge_set for f in faces),
                faces[embedding.external_face].edge_set)


def lower_bound(g: Digraph) -> int:
    sw = g.switches
    return max(sw.n_sources - 1, sw.n_sinks - 1, 0)


def _run_edge(args):
    g, e, k, embedding = args
    return solve_rooted(g, e, k, embedding)


def solve(g: Digraph, k: int, embedding: PlanarEmbedding | None = None,
          ref_edges: Iterable | None = None, jobs: int = 1, trace: list | None = None) -> SolveResult:
    """Decide whether at most ``k`` added edges make ``g`` st-planar.

    With ``embedding`` the search is pinned to that rotation system and
    external face.
    """
    reason = precheck(g, k)
    if reason is not None:
        return SolveResult(False, reason=reason)
    if g.m == 1:
        return SolveResult(True, 0, ())
    if embedding is None and k == 0 and ref_edges is None and trace is None:
        if is_st_planar(g):
            return SolveResult(True, 0, ())
        return SolveResult(False)
    edges = list(g.edges) if ref_edges is None else [tuple(e) for e in ref_edges]
    if embedding is not None:
        outer = embedding.faces[embedding.external_face].edge_set
        edges = [e for e in edges if e in outer]
    result = SolveResult(False)
    if jobs > 1 and trace is None:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as pool:
            answers = list(pool.map(_run_edge, [(g, e, k, embedding) for e in edges]))
    else:
        answers = []
        for e in edges:
            tr = [] if trace is not None else None
            answers.append(solve_rooted(g, e, k, embedding, tr))
            if trace is not None:
                tree, tables, _ = tr[0]
                result.table_sizes[e] = {i: len(t) for i, t in sorted(tables.items())}
                trace.append((e, tr[0]))
    best = None
    for e, ans in zip(edges, answers):
        result.per_edge[e] = None if ans is None else ans[0]
        if ans is not None:
            key = (ans[0], tuple(sorted(ans[1])))
            if best is None or key < best:
                best = key
    if best is not None:
        result.answer = True
        result.min_edges = best[0]
        result.witness = best[1]
    return result
