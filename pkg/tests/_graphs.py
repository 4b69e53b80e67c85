"""Small named instances and seeded corpora shared by the tests."""

import random

import networkx as nx

from stpec.digraph import Digraph
from stpec.io import random_acyclic_orientation, random_planar

# diamond: s=0, a=1, b=2, t=3
D = Digraph(4, ((0, 1), (0, 2), (1, 3), (2, 3)))
# zigzag: s1=0, t1=1, s2=2, t2=3
Z4 = Digraph(4, ((0, 1), (2, 1), (2, 3), (0, 3)))
C3 = Digraph(3, ((0, 1), (1, 2), (2, 0)))
# K4 orientation: s=0, a=1, b=2, t=3
K4 = Digraph(4, ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 3)))
EDGE = Digraph(2, ((0, 1),))
PATH = Digraph(3, ((0, 1), (1, 2)))


def random_corpus(size, seed, n_min=4, n_max=8):
    """Seeded biconnected planar acyclic digraphs with n_min..n_max vertices."""
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        n = rng.randint(n_min, n_max)
        out.append(random_planar(n, rng.randrange(10**9), extra=rng.random() * 0.4))
    return out


def small_atlas(max_n=6):
    """Every undirected graph on 1..max_n vertices from the networkx atlas."""
    return [h for h in nx.graph_atlas_g() if 1 <= h.number_of_nodes() <= max_n]


def atlas_orientations(max_n, per_graph, seed):
    rng = random.Random(seed)
    out = []
    for h in small_atlas(max_n):
        if h.number_of_edges() == 0:
            continue
        for _ in range(per_graph):
            out.append(random_acyclic_orientation(h, rng))
    return out


def cyclic_corpus(size, seed):
    """Planar biconnected digraphs containing a directed cycle.

    random_planar graphs contain the cycle 0, 1, ..., n-1; orienting it
    head to tail closes a directed cycle.
    """
    out = []
    for g in random_corpus(size, seed, n_min=3):
        n = g.n
        ring = {frozenset((i, (i + 1) % n)): (i, (i + 1) % n) for i in range(n)}
        edges = [ring.get(frozenset(e), e) for e in g.edges]
        out.append(Digraph(n, tuple(sorted(edges))))
    return out
