"""Exact solvers for Triangle Deletion, Feedback Arc Set in Tournaments and
Cluster Editing, parameterized above vertex-disjoint packing lower bounds,
with brute-force oracles and SAT-based hardness-construction generators."""

from .graphs import EditSet, Graph, Tournament, apply_edits, check_f_free
from .packing import Instance, Packing, bounds, greedy_pack, local_cost, validate_packing

__all__ = [
    "EditSet", "Graph", "Tournament", "apply_edits", "check_f_free",
    "Instance", "Packing", "bounds", "greedy_pack", "local_cost",
    "validate_packing",
]
