"""Triangle Deletion above a vertex-disjoint cost-t packing.

The reduction rule solves a packing part locally whenever some tau(H)-sized
deletion inside the part kills every triangle touching the part's edges; when
it cannot, the examination yields a certificate of triangles, each sharing one
distinct edge with the part, which drives a (2t'+1)-way branching whose every
branch lowers the above-bound budget ell by at least one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (EditSet, Graph, Pair, Triple, check_f_free, first_triangle,
                     graph_diff, ordered_pair)
from .packing import Instance, Packing, bounds
from .stats import SolveStats


@dataclass(frozen=True)
class Certificate:
    """Witness that the reduction rule cannot solve a part optimally.

    Each listed triangle contains exactly one edge of the part, and those
    shared edges are pairwise distinct. Either there are tau(H)+1 triangles,
    or there are t' <= tau(H) of them and removing the shared edges leaves a
    residual part needing more than tau(H) - t' deletions.
    """

    part_index: int
    triangles: tuple[Triple, ...]
    shared_edges: tuple[Pair, ...]

    def __post_init__(self):
        assert len(self.triangles) == len(self.shared_edges)
        assert len(set(self.shared_edges)) == len(self.shared_edges)


def exact_solve(g: Graph, k: int, lower_bound=None, stats: SolveStats | None = None) -> EditSet | None:
    """Deletion set of size <= k making g triangle-free, else None.

    Plain 3-way branching on an arbitrary triangle's edges; any solution must
    delete one of them, and deletions never create triangles. The optional
    lower_bound callable maps a graph to an admissible lower bound on its
    remaining optimum and is used only to prune.
    """
    if k < 0:
        return None

    def search(cur: Graph, budget: int, depth: int) -> Graph | None:
        tri = first_triangle(cur)
        if tri is None:
            return cur
        if budget == 0:
            return None
        if lower_bound is not None and lower_bound(cur) > budget:
            return None
        u, v, w = tri
        if stats:
            stats.enter_branch(depth + 1, 3)
        for edge in ((u, v), (u, w), (v, w)):
            res = search(cur.with_toggled([edge]), budget - 1, depth + 1)
            if res is not None:
                return res
        return None

    final = search(g, k, 0)
    return None if final is None else graph_diff(g, final)


def tau_triangle(g: Graph) -> int:
    """Exact triangle-deletion optimum of a (small) graph."""
    for k in range(g.m + 1):
        if exact_solve(g, k) is not None:
            return k
    return 0


def _labeled_edges(g: Graph, part: frozenset[int]) -> dict[Pair, list[Triple]]:
    """Part edges lying in a triangle with exactly one part edge.

    A triangle contains exactly one edge of the induced part iff its third
    vertex is outside the part; maps each such edge to its witnesses.
    """
    labeled: dict[Pair, list[Triple]] = {}
    for u, v in g.internal_edges(part):
        outside = sorted((g.adj[u] & g.adj[v]) - part)
        if outside:
            labeled[(u, v)] = [tuple(sorted((u, v, w))) for w in outside]
    return labeled


def _examine_part(g: Graph, part: frozenset[int]):
    """Run the rule's application procedure on one part.

    Returns ("apply", deletions, tau) when a tau-sized internal deletion set
    clears all triangles touching the part's edges, one pass; otherwise
    ("certificate", triangles, shared_edges, tau).
    """
    sub = g.induced(part)
    tau = tau_triangle(sub)
    labeled = _labeled_edges(g, part)
    shared = sorted(labeled)
    t_prime = len(shared)

    if t_prime > tau:
        chosen = shared[:tau + 1]
        return ("certificate",
                tuple(labeled[e][0] for e in chosen),
                tuple(chosen), tau)

    # residual part after removing the labeled edges; every triangle touching
    # the part either has a labeled edge or lives entirely inside the residual
    origin = sub.origin
    local = {v: i for i, v in enumerate(origin)}
    residual = sub.with_toggled([(local[u], local[v]) for u, v in shared])
    interior = exact_solve(residual, tau - t_prime)
    if interior is None:
        return ("certificate",
                tuple(labeled[e][0] for e in shared),
                tuple(shared), tau)
    deletions = list(shared) + [(origin[a], origin[b]) for a, b, _ in interior.ops()]
    return ("apply", sorted(deletions), tau)


def _rule1_pass(g: Graph, parts: list[tuple[frozenset[int], int]], k: int,
                stats: SolveStats | None = None):
    """One pass of the rule over all parts; one pass suffices because the
    applied deletions are internal to their part and cannot touch triangles
    containing edges of other (vertex-disjoint) parts."""
    applied: list[Pair] = []
    remaining: list[tuple[frozenset[int], int]] = []
    certificates: list[Certificate] = []
    for part, _ in parts:
        outcome = _examine_part(g, part)
        if outcome[0] == "apply":
            _, deletions, tau = outcome
            g = g.with_toggled(deletions)
            applied.extend(deletions)
            k -= tau
            if stats:
                stats.count_rule("rule1")
        else:
            _, triangles, shared, tau = outcome
            certificates.append(Certificate(len(remaining), triangles, shared))
            remaining.append((part, tau))
    return g, remaining, k, applied, certificates


def apply_rule1_all(inst: Instance) -> tuple[Instance, EditSet, list[Certificate]]:
    """Apply the reduction rule once to every part.

    Parts it solves are removed with their deletions applied and k lowered by
    tau; every surviving part is returned with a certificate. ell never
    increases (k and h drop together).
    """
    ell_before = inst.ell
    parts = list(zip(inst.packing.parts, inst.packing.costs))
    g, remaining, k, applied, certs = _rule1_pass(inst.host, parts, inst.k)
    packing = Packing.of([p for p, _ in remaining], inst.packing.mode,
                         [c for _, c in remaining])
    reduced = Instance(g, packing, k, inst.problem)
    assert reduced.ell <= ell_before
    return reduced, EditSet.deletions(applied), certs


def reject_by_bound(inst: Instance, t: int | None = None) -> bool:
    """True iff k > (2t+1) * ell, the sound rejection test for instances on
    which the reduction rule has been exhausted."""
    t_eff = max(t or 1, max(inst.packing.costs, default=1))
    h, ell = bounds(inst)
    return inst.k > (2 * t_eff + 1) * ell


def branch_solve(inst: Instance) -> tuple[EditSet | None, SolveStats]:
    """Above-packing search: exhaust the rule, reject by ell and by the
    (2t+1)ell bound, then branch on a smallest certificate.

    For a certificate of t' triangles the node has 2t'+1 children: per
    triangle the two deletions of its non-part edges (k-1, h unchanged), and
    one child deleting all t' shared edges and rewriting the part to its
    residual (k-t', h drops by at most t'-1). Every child lowers ell.
    """
    stats = SolveStats("above-packing-triangle")
    t_declared = max(inst.packing.costs, default=1)
    ell0 = max(inst.ell, 0)

    def search(g: Graph, parts, k: int, depth: int) -> Graph | None:
        while True:
            g, parts, k, _, certs = _rule1_pass(g, parts, k, stats)
            h = sum(c for _, c in parts)
            ell = k - h
            if ell < 0:
                return None
            t_eff = max(t_declared, max((c for _, c in parts), default=1))
            if k > (2 * t_eff + 1) * ell:
                return None
            if not parts:
                tri = first_triangle(g)
                if tri is None:
                    return g
                parts = [(frozenset(tri), 1)]
                stats.count_rule("pack-new-triangle")
                continue
            break

        cert = min(certs, key=lambda c: (len(c.triangles), c.part_index))
        t_prime = len(cert.triangles)
        stats.enter_branch(depth + 1, 2 * t_prime + 1)
        assert 2 * t_prime + 1 <= 2 * (t_eff + 1) + 1
        for triangle, shared in zip(cert.triangles, cert.shared_edges):
            apex = next(x for x in triangle if x not in shared)
            for edge in sorted((ordered_pair(shared[0], apex),
                                ordered_pair(shared[1], apex))):
                res = search(g.with_toggled([edge]), parts, k - 1, depth + 1)
                if res is not None:
                    return res
        rewritten = g.with_toggled(cert.shared_edges)
        part, _ = parts[cert.part_index]
        tau_res = tau_triangle(rewritten.induced(part))
        parts2 = list(parts)
        if tau_res == 0:
            del parts2[cert.part_index]
        else:
            parts2[cert.part_index] = (part, tau_res)
        return search(rewritten, parts2, k - t_prime, depth + 1)

    final = search(inst.host, list(zip(inst.packing.parts, inst.packing.costs)),
                   inst.k, 0)
    assert stats.max_depth <= ell0
    if final is None:
        return None, stats
    edits = graph_diff(inst.host, final)
    assert check_f_free(final, "triangle") and len(edits) <= inst.k
    return edits, stats
