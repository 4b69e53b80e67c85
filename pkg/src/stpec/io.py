"""Instance files and test-corpus generators.

Text format: a header line ``n m`` followed by ``m`` lines ``u v``; ``#``
starts a comment. A JSON mirror ``{"n": .., "edges": [[u, v], ...]}`` is
accepted wherever a text file is.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

import networkx as nx

from .digraph import Digraph, GraphError


class ParseError(GraphError):
    pass


def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_instance(text: str) -> Digraph:
    """Parse the text format; errors carry the offending line number."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(stripped)
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty instance")
    lineno, head = lines[0]
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise ParseError(f"line {lineno}: expected header 'n m'") from None
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: negative count")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}")
    return _build(n, body)


def parse_edge_list(text: str, n: int) -> list[tuple[int, int]]:
    """Parse a bare list of ``u v`` lines (a witness file)."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        return [tuple(e) for e in json.loads(stripped)]
    out = []
    for lineno, parts in _tokens(text):
        out.append(_pair(lineno, parts, n))
    return out


def _pair(lineno, parts, n):
    if len(parts) != 2:
        raise ParseError(f"line {lineno}: expected 'u v'")
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"line {lineno}: vertices must be integers") from None
    if not (0 <= u < n and 0 <= v < n):
        raise ParseError(f"line {lineno}: vertex out of range 0..{n - 1}")
    return u, v


def _build(n, body):
    edges, seen = [], {}
    for lineno, parts in body:
        u, v = _pair(lineno, parts, n)
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at {u}")
        if (u, v) in seen:
            raise ParseError(f"line {lineno}: duplicate edge {u} {v} (first on line {seen[(u, v)]})")
        seen[(u, v)] = lineno
        edges.append((u, v))
    return Digraph(n, tuple(edges))


def parse_json(text: str) -> Digraph:
    try:
        data = json.loads(text)
        n = int(data["n"])
        body = [(i + 1, [str(a), str(b)]) for i, (a, b) in enumerate(data["edges"])]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad JSON instance: {exc}") from None
    return _build(n, body)


def format_instance(g: Digraph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def format_json(g: Digraph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})


def read_instance(path) -> Digraph:
    return parse_instance(Path(path).read_text())


def write_instance(g: Digraph, path) -> None:
    path = Path(path)
    path.write_text(format_json(g) if path.suffix == ".json" else format_instance(g))


# -- generators --------------------------------------------------------------

def alt_cycle(m: int) -> Digraph:
    """2m-cycle with alternating orientation: even vertices are sources."""
    if m < 2:
        raise ValueError("alt_cycle needs m >= 2")
    n = 2 * m
    edges = []
    for i in range(n):
        j = (i + 1) % n
        edges.append((i, j) if i % 2 == 0 else (j, i))
    return Digraph(n, tuple(edges))


def random_planar(n: int, seed: int, extra: float = 0.5) -> Digraph:
    """Seeded random biconnected planar graph with an acyclic orientation.

    Starts from a cycle and adds random chords that keep the graph planar;
    edges are oriented along a random vertex order.
    """
    if n < 3:
        raise ValueError("random_planar needs n >= 3")
    rng = random.Random(seed)
    h = nx.cycle_graph(n)
    pairs = [(a, b) for a in range(n) for b in range(a + 2, n) if not (a == 0 and b == n - 1)]
    rng.shuffle(pairs)
    budget = int(extra * len(pairs))
    for a, b in pairs[:budget]:
        h.add_edge(a, b)
        if not nx.check_planarity(h)[0]:
            h.remove_edge(a, b)
    order = list(range(n))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    edges = sorted((a, b) if rank[a] < rank[b] else (b, a) for a, b in h.edges)
    return Digraph(n, tuple(edges))


def random_acyclic_orientation(h: nx.Graph, rng: random.Random) -> Digraph:
    """Orient an undirected graph on ``0..n-1`` along a random vertex order."""
    n = h.number_of_nodes()
    order = list(range(n))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    edges = sorted((a, b) if rank[a] < rank[b] else (b, a) for a, b in h.edges)
    return Digraph(n, tuple(edges))
