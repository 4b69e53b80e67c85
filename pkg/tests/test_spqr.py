import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from stpec.digraph import Digraph
from stpec.io import random_planar
from stpec.spqr import REF, build_spqr, pertinent_graph, skeleton_embeddings

from _graphs import EDGE, K4, Z4

THETA = Digraph(5, ((0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4), (0, 4)))


def kinds_below(tree, i):
    return [tree.nodes[c].kind for c in tree.nodes[i].children]


def test_zigzag_series_chain():
    t = build_spqr(Z4, (0, 1))
    root = t.nodes[t.root]
    assert root.kind == "Q" and root.edge == (0, 1)
    (s,) = root.children
    assert t.nodes[s].kind == "S"
    assert sorted(kinds_below(t, s)) == ["Q", "S"]
    inner = next(c for c in t.nodes[s].children if t.nodes[c].kind == "S")
    assert kinds_below(t, inner) == ["Q", "Q"]


def test_k4_single_rigid():
    t = build_spqr(K4, (0, 3))
    (r,) = t.nodes[t.root].children
    assert t.nodes[r].kind == "R"
    assert kinds_below(t, r) == ["Q"] * 5
    assert len(list(skeleton_embeddings(t.nodes[r]))) == 2


def test_single_edge():
    t = build_spqr(EDGE, 0)
    (q,) = t.nodes[t.root].children
    assert t.nodes[t.root].kind == "Q" and t.nodes[q].kind == "Q"


def test_theta_parallel():
    t = build_spqr(THETA, (0, 4))
    (p,) = t.nodes[t.root].children
    node = t.nodes[p]
    assert node.kind == "P" and len(node.children) == 3
    assert len(list(skeleton_embeddings(node))) == 6


def test_pertinent_graphs():
    t = build_spqr(Z4, (0, 1))
    (s,) = t.nodes[t.root].children
    assert set(pertinent_graph(t, s).edges) == set(Z4.edges) - {(0, 1)}
    inner = next(c for c in t.nodes[s].children if t.nodes[c].kind == "S")
    assert set(pertinent_graph(t, inner).edges) == {(2, 1), (2, 3)}
    q = next(c for c in t.nodes[s].children if t.nodes[c].kind == "Q")
    assert pertinent_graph(t, q).m == 1
    with pytest.raises(ValueError):
        pertinent_graph(t, t.root)


def test_series_embedding_is_single():
    t = build_spqr(Z4, (0, 1))
    (s,) = t.nodes[t.root].children
    assert len(list(skeleton_embeddings(t.nodes[s]))) == 1


def _check_faces_consistent(node, faces):
    # every skeleton edge is used once in each direction
    darts = [(a, b, s) for f in faces for a, b, s in f]
    assert len(darts) == len(set(darts)) == 2 * len(node.skeleton)
    for f in faces:
        for (a, b, _), (c, d, _) in zip(f, f[1:] + f[:1]):
            assert b == c


def _check_tree(g, tree):
    leaves = [n.edge for n in tree.nodes if n.kind == "Q" and n.id != tree.root]
    assert sorted(leaves) == sorted(set(g.edges) - {tree.ref_edge})
    for node in tree.nodes:
        if node.kind == "Q" or node.id == tree.root:
            continue
        assert sum(1 for *_, s in node.skeleton if s == REF) == 1
        h = nx.MultiGraph([(x, y) for x, y, _ in node.skeleton])
        if node.kind == "S":
            assert h.number_of_edges() == h.number_of_nodes() == 3  # binarized
        elif node.kind == "P":
            assert h.number_of_nodes() == 2 and h.number_of_edges() >= 3
        else:
            assert nx.node_connectivity(nx.Graph(h)) >= 3
        for child in node.children:
            cn = tree.nodes[child]
            assert set(cn.poles) <= set(node.skeleton_vertices)
        for faces in skeleton_embeddings(node):
            _check_faces_consistent(node, faces)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10), st.integers(0, 10**6), st.data())
def test_tree_invariants(n, seed, data):
    g = random_planar(n, seed)
    e = data.draw(st.sampled_from(g.edges))
    _check_tree(g, build_spqr(g, e))
