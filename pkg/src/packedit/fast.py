"""Feedback Arc Set in Tournaments above a vertex-disjoint cost-t packing.

Reversing arcs is equivalent to deleting them for acyclicity, and a tournament
is acyclic iff it has no directed triangle, so everything is phrased as
reversal sets and directed-triangle elimination. The reduction rule reverses
an optimal internal set of a packed subtournament when that clears every
directed triangle touching the part's arcs; one pass over the packing
suffices. Afterwards k <= (2t+1) * ell holds for yes-instances, which both
rejects and caps the plain engine's budget.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Exceeded
from .graphs import (EditSet, Pair, Tournament, backward_arcs,
                     first_directed_triangle, topological_order, tournament_diff)
from .packing import Instance, Packing, bounds
from .stats import SolveStats


@dataclass(frozen=True)
class FasResult:
    """A reversal set together with a vertex order whose backward arcs in the
    input tournament are exactly the reversed pairs."""

    reversals: EditSet
    order: tuple[int, ...]


def _result(original: Tournament, final: Tournament) -> FasResult:
    order = topological_order(final)
    assert order is not None
    reversals = tournament_diff(original, final)
    assert sorted(reversals.pairs()) == backward_arcs(original, order)
    return FasResult(reversals, order)


def exact_fas(t: Tournament, k: int, stats: SolveStats | None = None) -> FasResult | None:
    """Reversal set of size <= k leaving an acyclic tournament, else None.

    3-way branching on a directed triangle's arcs: any solution reverses at
    least one of them. Re-reversal in deeper branches is allowed (it costs
    budget and keeps the search complete); the returned set is the net
    difference, so its size never exceeds the budget actually spent.
    """
    if k < 0:
        return None

    def search(cur: Tournament, budget: int, depth: int) -> Tournament | None:
        tri = first_directed_triangle(cur)
        if tri is None:
            return cur
        if budget == 0:
            return None
        a, b, c = tri
        arcs = []
        for u, v in ((a, b), (a, c), (b, c)):
            arcs.append((u, v) if cur.has_arc(u, v) else (v, u))
        if stats:
            stats.enter_branch(depth + 1, 3)
        for arc in arcs:
            res = search(cur.with_reversed([arc]), budget - 1, depth + 1)
            if res is not None:
                return res
        return None

    final = search(t, k, 0)
    return None if final is None else _result(t, final)


def minimum_fas_cost(t: Tournament, cap: int) -> int:
    """Exact FAS optimum, or Exceeded beyond cap."""
    for k in range(cap + 1):
        if exact_fas(t, k) is not None:
            return k
    raise Exceeded(cap)


def _try_rule2(g: Tournament, part: frozenset[int]):
    """Attempt the rule on one part; returns (final host, tau) or None.

    Procedure: every internal arc lying in a directed triangle with an outside
    vertex is reversed; if such a reversal creates a new outside triangle the
    rule is inapplicable (first created triangle wins). If at most tau arcs
    were reversed and the residual subtournament is solvable with the leftover
    budget, the combined reversal set has size exactly tau and is applied.
    """
    outside = [v for v in range(g.n) if v not in part]
    sub = g.induced(part)
    tau = minimum_fas_cost(sub, sub.m)
    work = g
    reversed_count = 0
    for u, v in g.internal_arcs(part):
        if any(work.has_arc(v, w) and work.has_arc(w, u) for w in outside):
            work = work.with_reversed([(u, v)])
            reversed_count += 1
            if any(work.has_arc(u, w) and work.has_arc(w, v) for w in outside):
                return None
    if reversed_count > tau:
        return None
    residual = work.induced(part)
    res = exact_fas(residual, tau - reversed_count)
    if res is None:
        return None
    origin = residual.origin
    inner = [(origin[a], origin[b]) for a, b, _ in res.reversals.ops()]
    final = work.with_reversed(inner)
    assert len(tournament_diff(g, final)) == tau
    _assert_neighborhood_inclusion(final, part, outside)
    return final, tau


def _assert_neighborhood_inclusion(final: Tournament, part, outside) -> None:
    # ordering the part by the local solution, out-neighborhoods shrink and
    # in-neighborhoods grow along the order, restricted to outside vertices
    order = topological_order(final.induced(part))
    verts = sorted(part)
    seq = [verts[i] for i in order]
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            out_i = {w for w in outside if final.has_arc(seq[i], w)}
            out_j = {w for w in outside if final.has_arc(seq[j], w)}
            assert out_j <= out_i
            in_i = {w for w in outside if final.has_arc(w, seq[i])}
            in_j = {w for w in outside if final.has_arc(w, seq[j])}
            assert in_i <= in_j


def apply_rule2_all(inst: Instance, stats: SolveStats | None = None) -> tuple[Instance, EditSet]:
    """One pass of the rule over all parts (reversing inside one part never
    removes a directed triangle containing arcs of another)."""
    g = inst.host
    k = inst.k
    remaining: list[tuple[frozenset[int], int]] = []
    for part, cost in zip(inst.packing.parts, inst.packing.costs):
        outcome = _try_rule2(g, part)
        if outcome is None:
            remaining.append((part, cost))
        else:
            g, tau = outcome
            k -= tau
            if stats:
                stats.count_rule("rule2")
    packing = Packing.of([p for p, _ in remaining], inst.packing.mode,
                         [c for _, c in remaining])
    reduced = Instance(g, packing, k, inst.problem)
    assert reduced.ell <= inst.ell
    return reduced, tournament_diff(inst.host, g)


def reject_by_bound_fast(inst: Instance, t: int | None = None) -> bool:
    """True iff k > (2t+1) * ell after the rule pass."""
    t_eff = max(t or 1, max(inst.packing.costs, default=1))
    h, ell = bounds(inst)
    return inst.k > (2 * t_eff + 1) * ell


def solve_above_packing_fast(inst: Instance, t: int | None = None) -> tuple[FasResult | None, SolveStats]:
    """Rule pass, bound rejection, then the plain engine with budget
    min(k, (2t+1) ell); rule reversals are folded into the returned set."""
    stats = SolveStats("above-packing-fast")
    reduced, _ = apply_rule2_all(inst, stats)
    if reduced.ell < 0 or reject_by_bound_fast(reduced, t):
        return None, stats
    t_eff = max(t or 1, max(reduced.packing.costs, default=1))
    budget = min(reduced.k, (2 * t_eff + 1) * reduced.ell)
    res = exact_fas(reduced.host, budget, stats)
    if res is None:
        return None, stats
    assert stats.max_depth <= budget
    final = reduced.host.with_reversed(res.reversals.pairs())
    return _result(inst.host, final), stats
