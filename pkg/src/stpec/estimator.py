"""scikit-learn style wrapper around the solver."""

from __future__ import annotations

import networkx as nx
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .digraph import Digraph, GraphError
from .dp import solve


def check_digraph(g) -> Digraph:
    """Coerce ``g`` to a :class:`Digraph`.

    Accepts a Digraph, a networkx DiGraph on integer nodes ``0..n-1``, or an
    ``(n, edges)`` pair.
    """
    if isinstance(g, Digraph):
        return g
    if isinstance(g, nx.DiGraph):
        n = g.number_of_nodes()
        if set(g.nodes) != set(range(n)):
            raise GraphError("networkx graph nodes must be 0..n-1")
        return Digraph(n, tuple(sorted(g.edges)))
    if isinstance(g, nx.Graph):
        raise GraphError("graph must be directed")
    try:
        n, edges = g
    except (TypeError, ValueError):
        raise GraphError(f"cannot interpret {type(g).__name__} as a digraph") from None
    return Digraph(int(n), tuple(tuple(e) for e in edges))


def check_k(k) -> int:
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise ValueError(f"k must be a non-negative integer, got {k!r}")
    return int(k)


class StPlanarCompleter(TransformerMixin, BaseEstimator):
    """Add at most ``k`` edges to make a digraph st-planar.

    ``fit`` solves one instance and stores ``answer_``, ``min_edges_`` and
    ``witness_``; ``transform`` returns the completed digraph; ``predict``
    answers the decision question for a list of instances.
    """

    def __init__(self, k=1, embedding=None, n_jobs=1):
        self.k = k
        self.embedding = embedding
        self.n_jobs = n_jobs

    def _solve(self, g):
        return solve(g, check_k(self.k), embedding=self.embedding, jobs=self.n_jobs)

    def fit(self, X, y=None):
        g = check_digraph(X)
        res = self._solve(g)
        self.graph_ = g
        self.result_ = res
        self.answer_ = res.answer
        self.min_edges_ = res.min_edges
        self.witness_ = tuple(res.witness) if res.answer else None
        return self

    def _check_fitted(self):
        if not hasattr(self, "result_"):
            raise NotFittedError("call fit before using this estimator")

    def transform(self, X):
        """The fitted graph ``X`` plus the witness edges."""
        self._check_fitted()
        g = check_digraph(X)
        if g.n != self.graph_.n or g.edge_set != self.graph_.edge_set:
            raise ValueError("transform expects the graph passed to fit")
        if not self.answer_:
            raise ValueError(f"no completion with at most {self.k} edges: {self.result_.report()}")
        return g.with_edges(self.witness_)

    def predict(self, X):
        """Decision for each graph in ``X``."""
        return [self._solve(check_digraph(g)).answer for g in X]
