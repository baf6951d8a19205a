"""Search statistics collected by the solvers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


@dataclass
class SolveStats:
    """Counters describing one solver run.

    branch_nodes counts nodes where the solver actually branched; max_depth is
    the deepest branching level reached (reduction-rule applications do not
    count as depth). max_branch_factor is the largest number of children
    created at any single node.
    """

    engine: str
    branch_nodes: int = 0
    max_depth: int = 0
    max_branch_factor: int = 0
    rules_applied: Counter = field(default_factory=Counter)

    def count_rule(self, name: str, times: int = 1) -> None:
        self.rules_applied[name] += times

    def enter_branch(self, depth: int, factor: int) -> None:
        self.branch_nodes += 1
        self.max_depth = max(self.max_depth, depth)
        self.max_branch_factor = max(self.max_branch_factor, factor)

    def as_dict(self) -> dict:
        out = {
            "engine": self.engine,
            "branch_nodes": self.branch_nodes,
            "max_depth": self.max_depth,
            "max_branch_factor": self.max_branch_factor,
        }
        for rule in sorted(self.rules_applied):
            out[f"rule_{rule}"] = self.rules_applied[rule]
        return out
