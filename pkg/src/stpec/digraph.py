"""Simple directed graphs, switch classification and instance prechecks."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx


class Switch(enum.Enum):
    SOURCE = "source"
    SINK = "sink"
    NON_SWITCH = "non-switch"


class Reject(enum.Enum):
    """Reasons an instance is rejected before running the solver.

    Declaration order is the reporting priority.
    """

    DIRECTED_CYCLE = "DirectedCycle"
    TOO_MANY_SWITCHES = "TooManySwitches"
    NOT_BICONNECTED = "NotBiconnected"
    NOT_PLANAR = "NotPlanar"

    def __str__(self):
        return f"Reject({self.value})"


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Digraph:
    """A simple digraph on vertices ``0..n-1``.

    Edges are ``(tail, head)`` pairs; self-loops and repeated edges are
    rejected at construction.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        seen = set()
        for a, b in edges:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise GraphError(f"edge ({a}, {b}) out of range for n={self.n}")
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            if (a, b) in seen:
                raise GraphError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> "Digraph":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n)]
        for a, b in self.edges:
            out[a].append(b)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in range(self.n)]
        for a, b in self.edges:
            inc[b].append(a)
        return tuple(tuple(x) for x in inc)

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.edge_set

    def adjacent(self, a: int, b: int) -> bool:
        return (a, b) in self.edge_set or (b, a) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.out_adj[v]) + len(self.in_adj[v])

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph(self.n, self.edges + tuple(tuple(e) for e in extra))

    def relabel(self, perm) -> "Digraph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Digraph(self.n, tuple((perm[a], perm[b]) for a, b in self.edges))

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def undirected(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def switches(self) -> "SwitchClass":
        return classify_switches(self)


@dataclass(frozen=True)
class SwitchClass:
    tags: tuple[Switch, ...]

    def __getitem__(self, v):
        return self.tags[v]

    @property
    def sources(self) -> list[int]:
        return [v for v, t in enumerate(self.tags) if t is Switch.SOURCE]

    @property
    def sinks(self) -> list[int]:
        return [v for v, t in enumerate(self.tags) if t is Switch.SINK]

    @property
    def n_sources(self) -> int:
        return len(self.sources)

    @property
    def n_sinks(self) -> int:
        return len(self.sinks)

    def is_switch(self, v: int) -> bool:
        return self.tags[v] is not Switch.NON_SWITCH


def classify_switches(g: Digraph) -> SwitchClass:
    tags = []
    for v in range(g.n):
        has_in, has_out = bool(g.in_adj[v]), bool(g.out_adj[v])
        if not has_in and not has_out:
            raise GraphError(f"isolated vertex {v}")
        if not has_in:
            tags.append(Switch.SOURCE)
        elif not has_out:
            tags.append(Switch.SINK)
        else:
            tags.append(Switch.NON_SWITCH)
    return SwitchClass(tuple(tags))


def is_acyclic(g: Digraph) -> bool:
    indeg = [len(x) for x in g.in_adj]
    stack = [v for v in range(g.n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in g.out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == g.n


def is_biconnected(g: Digraph) -> bool:
    """2-connectivity of the underlying undirected graph.

    A lone edge on two vertices counts as biconnected.
    """
    if g.n == 2 and g.m == 1:
        return True
    if g.n < 3:
        return False
    return nx.is_biconnected(g.undirected())


def precheck(g: Digraph, k: int) -> Reject | None:
    """Return the first applicable rejection reason, or ``None`` to continue."""
    if not is_acyclic(g):
        return Reject.DIRECTED_CYCLE
    if g.n and not any(g.degree(v) == 0 for v in range(g.n)):
        sw = g.switches
        if sw.n_sources + sw.n_sinks > 2 * k + 2:
            return Reject.TOO_MANY_SWITCHES
    if not is_biconnected(g):
        return Reject.NOT_BICONNECTED
    if not nx.check_planarity(g.undirected())[0]:
        return Reject.NOT_PLANAR
    return None
