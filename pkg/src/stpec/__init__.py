"""Exact solver for st-planar edge completion.

Given a biconnected planar digraph and a budget ``k``, decide whether adding
at most ``k`` edges yields an st-planar graph, and find a smallest such set.
"""

from .digraph import Digraph, GraphError, Reject, classify_switches, is_acyclic, precheck
from .dp import SolveResult, solve, solve_rooted
from .estimator import StPlanarCompleter, check_digraph
from .io import alt_cycle, parse_instance, random_planar, read_instance, write_instance
from .oracle import brute_force_min_completion, exhaustive_st_check
from .planarity import is_st_planar, test_planarity

__all__ = [
    "Digraph", "GraphError", "Reject", "SolveResult", "StPlanarCompleter",
    "alt_cycle", "brute_force_min_completion", "check_digraph", "classify_switches",
    "exhaustive_st_check", "is_acyclic", "is_st_planar", "parse_instance", "precheck",
    "random_planar", "read_instance", "solve", "solve_rooted", "test_planarity",
    "write_instance",
]
