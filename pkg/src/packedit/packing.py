"""Packings of bounded-cost subgraphs, the lower bound h and the excess ell.

A packing is an ordered list of host vertex subsets, each annotated with the
exact local optimum tau of the subgraph it induces. Vertex-disjoint packings
give a lower bound h = sum of costs on the global optimum; ell = k - h is the
above-bound budget that drives all search trees in this package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import Exceeded, SizeCapError
from .graphs import Graph, Tournament

VERTEX_MODE = "vertex"
EDGE_MODE = "edge"

TRIANGLE_DEL = "triangle-del"
FAST = "fast"
CLUSTER_EDIT = "cluster-edit"

PROBLEMS = (TRIANGLE_DEL, FAST, CLUSTER_EDIT)

MAX_COST_CAP = 12


@dataclass(frozen=True)
class Packing:
    parts: tuple[frozenset[int], ...]
    mode: str = VERTEX_MODE
    costs: tuple[int, ...] = ()

    @staticmethod
    def of(parts, mode=VERTEX_MODE, costs=None) -> "Packing":
        parts = tuple(frozenset(p) for p in parts)
        if costs is None:
            costs = (1,) * len(parts)
        costs = tuple(int(c) for c in costs)
        if len(costs) != len(parts):
            raise ValueError("one cost per part required")
        if mode not in (VERTEX_MODE, EDGE_MODE):
            raise ValueError(f"unknown disjointness mode {mode!r}")
        return Packing(parts, mode, costs)

    @staticmethod
    def empty(mode=VERTEX_MODE) -> "Packing":
        return Packing((), mode, ())

    @property
    def h(self) -> int:
        return sum(self.costs)

    def __len__(self) -> int:
        return len(self.parts)

    def without(self, index: int) -> "Packing":
        parts = self.parts[:index] + self.parts[index + 1:]
        costs = self.costs[:index] + self.costs[index + 1:]
        return Packing(parts, self.mode, costs)

    def replaced(self, index: int, part, cost: int) -> "Packing":
        parts = list(self.parts)
        costs = list(self.costs)
        parts[index] = frozenset(part)
        costs[index] = cost
        return Packing(tuple(parts), self.mode, tuple(costs))

    def appended(self, part, cost: int) -> "Packing":
        return Packing(self.parts + (frozenset(part),), self.mode,
                       self.costs + (cost,))


@dataclass(frozen=True)
class Instance:
    host: Graph | Tournament
    packing: Packing
    k: int
    problem: str

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.problem == FAST and not isinstance(self.host, Tournament):
            raise ValueError("problem 'fast' needs a tournament host")
        if self.problem != FAST and not isinstance(self.host, Graph):
            raise ValueError(f"problem {self.problem!r} needs an undirected host")

    @property
    def h(self) -> int:
        return self.packing.h

    @property
    def ell(self) -> int:
        return self.k - self.packing.h


def bounds(inst: Instance) -> tuple[int, int]:
    """(h, ell) from the packing annotations; assumes a validated packing."""
    return inst.packing.h, inst.k - inst.packing.h


def local_cost(h_sub, problem: str, cap: int) -> int:
    """Exact local optimum tau of a packing part, or Exceeded beyond cap.

    Dispatches to the problem's exact branching engine. cap is hard-limited to
    12: local solving is exponential in the cap.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    if cap > MAX_COST_CAP:
        raise SizeCapError(f"local cost cap limited to {MAX_COST_CAP}, got {cap}")
    if problem == TRIANGLE_DEL:
        from .triangle import exact_solve
        feasible = lambda k: exact_solve(h_sub, k) is not None
    elif problem == FAST:
        from .fast import exact_fas
        feasible = lambda k: exact_fas(h_sub, k) is not None
    elif problem == CLUSTER_EDIT:
        from .cluster import exact_ce
        feasible = lambda k: exact_ce(h_sub, k) is not None
    else:
        raise ValueError(f"unknown problem {problem!r}")
    for k in range(cap + 1):
        if feasible(k):
            return k
    raise Exceeded(cap)


def forbidden_subgraphs(host, problem: str) -> list[tuple[int, ...]]:
    """Canonical list of minimal forbidden-subgraph vertex triples."""
    from .graphs import enumerate_directed_triangles, enumerate_p3, enumerate_triangles
    if problem == TRIANGLE_DEL:
        return enumerate_triangles(host)
    if problem == FAST:
        return enumerate_directed_triangles(host)
    if problem == CLUSTER_EDIT:
        return [tuple(sorted(t)) for t in enumerate_p3(host)]
    raise ValueError(f"unknown problem {problem!r}")


def _induce(host, vertices):
    return host.induced(sorted(vertices))


def greedy_pack(host, problem: str, t: int) -> Packing:
    """Deterministic maximal vertex-disjoint cost-t packing.

    Iterated deepening keeps h monotone in t: first a maximal packing of
    single forbidden subgraphs (cost 1 each), then for each cap 2..t one
    fixpoint round in which every part absorbs, in canonical order, any
    forbidden subgraph that overlaps it, uses only free vertices, and keeps
    the part's local cost within the cap.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if t > MAX_COST_CAP:
        raise SizeCapError(f"t limited to {MAX_COST_CAP}, got {t}")
    subgraphs = forbidden_subgraphs(host, problem)
    parts: list[set[int]] = []
    used: set[int] = set()
    for triple in subgraphs:
        if used.isdisjoint(triple):
            parts.append(set(triple))
            used.update(triple)
    for cap in range(2, t + 1):
        for part in parts:
            grown = True
            while grown:
                grown = False
                for triple in subgraphs:
                    sub = set(triple)
                    if sub <= part:
                        continue
                    if not (sub & part):
                        continue
                    if (sub - part) & used:
                        continue
                    candidate = part | sub
                    try:
                        local_cost(_induce(host, candidate), problem, cap)
                    except Exceeded:
                        continue
                    part |= sub
                    used |= sub
                    grown = True
    costs = [local_cost(_induce(host, p), problem, t) for p in parts]
    return Packing.of([frozenset(p) for p in parts], VERTEX_MODE, costs)


@dataclass(frozen=True)
class Violation:
    kind: str
    part_index: int | None
    detail: str


@dataclass
class PackingReport:
    ok: bool
    violations: list[Violation] = field(default_factory=list)
    h: int | None = None
    ell: int | None = None

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None


def validate_packing(inst: Instance, t: int) -> PackingReport:
    """Check disjointness and cost annotations; costs are recomputed, never
    trusted (the ell parameter gates rejection, so staleness is unsafe)."""
    packing = inst.packing
    host = inst.host
    violations: list[Violation] = []

    if packing.mode == VERTEX_MODE:
        seen: dict[int, int] = {}
        for i, part in enumerate(packing.parts):
            for v in sorted(part):
                if v in seen:
                    violations.append(Violation(
                        "overlap", i, f"vertex {v} also in part {seen[v]}"))
                    break
                seen[v] = i
    else:
        edge_owner: dict[tuple[int, int], int] = {}
        for i, part in enumerate(packing.parts):
            edges = (host.internal_edges(part) if isinstance(host, Graph)
                     else [tuple(sorted(a)) for a in host.internal_arcs(part)])
            clash = next((e for e in edges if e in edge_owner), None)
            if clash is not None:
                violations.append(Violation(
                    "overlap", i, f"edge {clash} also in part {edge_owner[clash]}"))
            else:
                for e in edges:
                    edge_owner[e] = i

    recomputed: list[int] = []
    for i, part in enumerate(packing.parts):
        sub = _induce(host, part)
        try:
            tau = local_cost(sub, inst.problem, t)
        except Exceeded:
            violations.append(Violation(
                "cost-exceeds-t", i, f"part {i} needs more than {t} modifications"))
            recomputed.append(t + 1)
            continue
        recomputed.append(tau)
        if tau == 0:
            violations.append(Violation(
                "cost-zero", i, f"part {i} is already solved (tau = 0)"))
        elif packing.costs and packing.costs[i] != tau:
            violations.append(Violation(
                "stale-annotation", i,
                f"part {i} annotated {packing.costs[i]}, recomputed {tau}"))

    if violations:
        return PackingReport(False, violations)
    h = sum(recomputed)
    return PackingReport(True, [], h, inst.k - h)


def edge_disjoint_triangle_bound_holds(host: Graph, packing: Packing) -> bool:
    """Sanity check for the edge-disjoint pathway: parts are triangles of the
    host with pairwise disjoint edge sets."""
    owner: dict[tuple[int, int], int] = {}
    for i, part in enumerate(packing.parts):
        if len(part) != 3:
            return False
        edges = host.internal_edges(part)
        if len(edges) != 3:
            return False
        for e in edges:
            if e in owner:
                return False
            owner[e] = i
    return True
