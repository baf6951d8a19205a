"""Cluster Editing above vertex-disjoint packings.

Two solver routes: the generic cost-t pipeline (local-neighborhood reduction
rule, (2t+1)ell bound, plain engine) and the specialized search tree for
P3-packings whose branch factor never exceeds 4. The P3 route exhausts cheap
reduction rules (isolated-clique removal, pendant-clique cutting, the two
near-twin P3 rules), branches on P3s relative to the packing, and finishes on
max-degree-2 residual graphs with a maximum-matching endgame.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import (EditSet, Graph, Pair, check_f_free, enumerate_p3,
                     graph_diff, ordered_pair)
from .packing import Instance, Packing, bounds
from .stats import SolveStats


@dataclass(frozen=True)
class ClusterSolution:
    """Edits plus the clusters (connected components, all cliques) of the
    edited graph."""

    edits: EditSet
    clusters: tuple[frozenset[int], ...]


def _components(g: Graph, active) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    comps = []
    for start in sorted(active):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u in active and u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return comps


def _is_clique(g: Graph, comp) -> bool:
    return all(g.has_edge(u, v) for u, v in combinations(comp, 2))


def _solution(host: Graph, final: Graph) -> ClusterSolution:
    comps = _components(final, range(final.n))
    assert all(_is_clique(final, c) for c in comps)
    assert check_f_free(final, "p3")
    return ClusterSolution(graph_diff(host, final),
                           tuple(frozenset(c) for c in comps))


def exact_ce(g: Graph, k: int, stats: SolveStats | None = None) -> ClusterSolution | None:
    """Edit set of size <= k making g a cluster graph, else None.

    Branches on an induced P3 uvw: delete {u,v}, delete {v,w} or insert
    {u,w}, marking the modified pair immutable in the branch. Any solution
    modifies one of the three pairs and never re-modifies a pair, so the
    marking preserves at least one optimal solution.
    """
    if k < 0:
        return None

    def search(cur: Graph, budget: int, frozen: frozenset[Pair], depth: int) -> Graph | None:
        p3s = enumerate_p3(cur)
        if not p3s:
            return cur
        if budget == 0:
            return None
        u, v, w = p3s[0]
        candidates = [ordered_pair(u, v), ordered_pair(v, w), ordered_pair(u, w)]
        open_pairs = [p for p in candidates if p not in frozen]
        if not open_pairs:
            return None
        if stats:
            stats.enter_branch(depth + 1, len(open_pairs))
        for pair in open_pairs:
            res = search(cur.with_toggled([pair]), budget - 1,
                         frozen | {pair}, depth + 1)
            if res is not None:
                return res
        return None

    final = search(g, k, frozenset(), 0)
    return None if final is None else _solution(g, final)


def tau_cluster(g: Graph) -> int:
    """Exact cluster-editing optimum of a (small) graph."""
    for k in range(g.n * g.n):
        if exact_ce(g, k) is not None:
            return k
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Rule 3: solve a part locally when its optimal solution is compatible with
# the outside neighborhoods.
# ---------------------------------------------------------------------------

def _try_rule3(g: Graph, part: frozenset[int]):
    """Returns (edits-within-part, tau) when the rule applies, else None.

    Necessary condition: outside neighborhoods of part vertices are pairwise
    equal or disjoint, i.e. the bipartite graph between the part and its
    outside neighbors is a disjoint union of complete bipartite graphs. The
    forced edits insert non-edges inside equal-neighborhood groups and delete
    edges across differing neighborhoods; the interior (no outside neighbors)
    is solved optimally with the leftover budget, and the rule fires iff the
    combined solution is exactly optimal for the part.
    """
    verts = sorted(part)
    outside_nbrs = {v: frozenset(g.adj[v] - part) for v in verts}
    for u, v in combinations(verts, 2):
        nu, nv = outside_nbrs[u], outside_nbrs[v]
        if nu != nv and (nu & nv):
            return None

    forced: list[Pair] = []
    for u, v in combinations(verts, 2):
        same = outside_nbrs[u] == outside_nbrs[v]
        if g.has_edge(u, v):
            if not same:
                forced.append((u, v))
        elif same and outside_nbrs[u]:
            forced.append((u, v))

    sub = g.induced(part)
    tau = tau_cluster(sub)
    if len(forced) > tau:
        return None

    interior = [v for v in verts if not outside_nbrs[v]]
    sub_int = g.induced(interior)
    tau_int = tau_cluster(sub_int)
    if len(forced) + tau_int != tau:
        return None
    sol_int = exact_ce(sub_int, tau_int)
    origin = sub_int.origin
    edits = list(forced) + [(origin[a], origin[b]) for a, b, _ in sol_int.edits.ops()]
    return sorted(edits), tau


def apply_rule3_all(inst: Instance, stats: SolveStats | None = None) -> tuple[Instance, EditSet]:
    """One pass of the rule over all parts; edits are internal to their part,
    so vertex-disjoint parts never interfere."""
    g = inst.host
    k = inst.k
    remaining: list[tuple[frozenset[int], int]] = []
    for part, cost in zip(inst.packing.parts, inst.packing.costs):
        outcome = _try_rule3(g, part)
        if outcome is None:
            remaining.append((part, cost))
        else:
            edits, tau = outcome
            g = g.with_toggled(edits)
            k -= tau
            if stats:
                stats.count_rule("rule3")
    packing = Packing.of([p for p, _ in remaining], inst.packing.mode,
                         [c for _, c in remaining])
    reduced = Instance(g, packing, k, inst.problem)
    assert reduced.ell <= inst.ell
    return reduced, graph_diff(inst.host, g)


# ---------------------------------------------------------------------------
# Rules 4 and 5: the P3 special cases of Rule 3 (near-twin endpoints).
# ---------------------------------------------------------------------------

def _find_twin_edit(g: Graph, active: frozenset[int]):
    """First applicable near-twin edit in canonical P3 order.

    For each induced P3 with center v and endpoints a < b, the deletion rule
    is tried first in both endpoint orientations (matching the documented
    behavior on an isolated P3), then the insertion rule:
      delete {v,w}: N(u) and N(v) agree outside the P3 and N(u) n N(w) = {v};
      insert {a,b}: all three outside neighborhoods agree.
    """
    for a, v, b in _p3s_within(g, active):
        triple = {a, v, b}
        na = (g.adj[a] & active) - triple
        nv = (g.adj[v] & active) - triple
        nb = (g.adj[b] & active) - triple
        if na == nv and (g.adj[a] & g.adj[b] & active) == {v}:
            return "rule5", [ordered_pair(v, b)]
        if nb == nv and (g.adj[b] & g.adj[a] & active) == {v}:
            return "rule5", [ordered_pair(v, a)]
        if na == nv == nb:
            return "rule4", [(a, b)]
    return None


def _p3s_within(g: Graph, active: frozenset[int]):
    if len(active) == g.n:
        return enumerate_p3(g)
    sub = g.induced(active)
    origin = sub.origin
    return [(origin[u], origin[v], origin[w]) for u, v, w in enumerate_p3(sub)]


def _maintain_parts(g: Graph, parts: list[frozenset[int]], touched: list[Pair]) -> list[frozenset[int]]:
    """Drop parts that no longer induce a P3 after the given pair edits.

    Only parts containing both endpoints of an edited pair can change; for a
    3-vertex part any internal edit turns it into a clique or a non-P3, so
    affected parts are simply retired.
    """
    out = []
    for part in parts:
        if any(u in part and v in part for u, v in touched):
            sub = g.induced(part)
            if sorted(d for d in (sub.degree(i) for i in range(sub.n))) != [1, 1, 2]:
                continue
        out.append(part)
    return out


def apply_local_twin_rules(inst: Instance, stats: SolveStats | None = None) -> tuple[Instance, EditSet]:
    """Exhaustively apply the two P3 near-twin rules.

    The packing is kept honest along the way: a part whose internal pair got
    edited is re-examined and dropped when it stops being a forbidden
    subgraph (its cost is recomputed otherwise), so ell never increases.
    """
    g = inst.host
    k = inst.k
    parts = list(inst.packing.parts)
    costs = list(inst.packing.costs)
    active = frozenset(range(g.n))
    while True:
        found = _find_twin_edit(g, active)
        if found is None:
            break
        rule, pairs = found
        g = g.with_toggled(pairs)
        k -= len(pairs)
        if stats:
            stats.count_rule(rule)
        keep = []
        for part, cost in zip(parts, costs):
            if any(u in part and v in part for u, v in pairs):
                tau = tau_cluster(g.induced(part))
                if tau == 0:
                    continue
                keep.append((part, tau))
            else:
                keep.append((part, cost))
        parts = [p for p, _ in keep]
        costs = [c for _, c in keep]
    packing = Packing.of(parts, inst.packing.mode, costs)
    reduced = Instance(g, packing, k, inst.problem)
    assert reduced.ell <= inst.ell
    return reduced, graph_diff(inst.host, g)


# ---------------------------------------------------------------------------
# Rules 6 and 7: pendant-clique cutting and isolated-cluster removal.
# ---------------------------------------------------------------------------

def _maximal_cliques(g: Graph, active) -> list[tuple[int, ...]]:
    """Bron-Kerbosch over the active vertices, results in canonical order."""
    out: list[tuple[int, ...]] = []

    def extend(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot_pool = p | x
        pivot = max(pivot_pool, key=lambda v: len(g.adj[v] & p))
        for v in sorted(p - g.adj[pivot]):
            extend(r | {v}, p & g.adj[v], x & g.adj[v])
            p = p - {v}
            x = x | {v}

    extend(set(), set(active), set())
    return sorted(out)


def _find_rule6(g: Graph, active: frozenset[int]):
    """First clique K (|K| >= 3) whose vertices have at most one active
    neighbor outside and whose outside neighbors each see exactly one vertex
    of K. A qualifying clique is necessarily maximal."""
    for clique in _maximal_cliques(g, active):
        if len(clique) < 3:
            continue
        kset = set(clique)
        if any(len((g.adj[v] & active) - kset) > 1 for v in clique):
            continue
        boundary = sorted(set().union(*(g.adj[v] & active for v in clique)) - kset)
        if not boundary:
            continue
        if any(len(g.adj[x] & kset) != 1 for x in boundary):
            continue
        crossing = sorted(ordered_pair(v, x) for x in boundary
                          for v in g.adj[x] & kset)
        return clique, crossing
    return None


def apply_clique_rules(g: Graph, k: int, stats: SolveStats | None = None) -> tuple[Graph, int, EditSet]:
    """Exhaust the pendant-clique rule (delete the q crossing edges, k -= q)
    and isolated-cluster removal; returns the reduced graph (its ``origin``
    maps back to the input ids), the new budget and the deletions applied."""
    active = frozenset(range(g.n))
    work = g
    while True:
        comps = _components(work, active)
        cliques = [c for c in comps if _is_clique(work, c)]
        if cliques:
            active = active - {v for c in cliques for v in c}
            if stats:
                stats.count_rule("rule7", len(cliques))
            continue
        found = _find_rule6(work, active)
        if found is None:
            break
        _, crossing = found
        work = work.with_toggled(crossing)
        k -= len(crossing)
        if stats:
            stats.count_rule("rule6")
    reduced = work.induced(sorted(active))
    return reduced, k, graph_diff(g, work)


# ---------------------------------------------------------------------------
# The 4^ell search tree for P3-packings.
# ---------------------------------------------------------------------------

def _p3_shape(g: Graph, part: frozenset[int]) -> tuple[int, int, int]:
    """(endpoint, center, endpoint) of a part inducing a P3, endpoints sorted."""
    verts = sorted(part)
    center = next(v for v in verts
                  if len(g.adj[v] & part) == 2)
    ends = sorted(v for v in verts if v != center)
    return ends[0], center, ends[1]


def _find_branch(g: Graph, active: frozenset[int], parts: list[frozenset[int]]):
    """First applicable branching rule, canonical order; returns
    (rule name, branches), each branch being (pairs to toggle, part index to
    retire or None)."""
    p3s = _p3s_within(g, active)

    # BR1: a P3 sharing at most one vertex with every packed P3
    for a, v, b in p3s:
        triple = {a, v, b}
        if all(len(triple & part) <= 1 for part in parts):
            return "br1", [([ordered_pair(a, v)], None),
                           ([ordered_pair(v, b)], None),
                           ([(a, b)], None)]

    # BR2: x adjacent to both endpoints but not the center
    for i, part in enumerate(parts):
        u, v, w = _p3_shape(g, part)
        xs = sorted(((g.adj[u] & g.adj[w] & active) - g.adj[v]) - part)
        if xs:
            x = xs[0]
            return "br2", [([ordered_pair(u, x)], None),
                           ([ordered_pair(w, x)], None),
                           ([ordered_pair(v, x)], None),
                           ([ordered_pair(u, v), ordered_pair(v, w), (u, w)], i)]

    # BR3: x adjacent to an endpoint and the center, y adjacent to exactly
    # one of those two (x, y outside the packed P3)
    for i, part in enumerate(parts):
        e1, v, e2 = _p3_shape(g, part)
        for u in (e1, e2):
            xs = sorted((g.adj[u] & g.adj[v] & active) - part)
            if not xs:
                continue
            x = xs[0]
            ys = sorted(y for y in active - part - {x}
                        if (y in g.adj[u]) != (y in g.adj[v]))
            if not ys:
                continue
            y = ys[0]
            anchor, other = (u, v) if y in g.adj[u] else (v, u)
            return "br3", [([ordered_pair(u, x)], None),
                           ([ordered_pair(v, x)], None),
                           ([ordered_pair(y, anchor)], None),
                           ([ordered_pair(y, other)], None)]

    # BR4: x adjacent to the center only; the last branch separates the
    # center from both endpoints (two deletions) and retires the packed P3
    for i, part in enumerate(parts):
        u, v, w = _p3_shape(g, part)
        xs = sorted(((g.adj[v] & active) - g.adj[u]) - g.adj[w] - part)
        if xs:
            x = xs[0]
            return "br4", [([ordered_pair(v, x)], None),
                           ([ordered_pair(u, x)], None),
                           ([ordered_pair(w, x)], None),
                           ([ordered_pair(u, v), ordered_pair(v, w)], i)]
    return None


def _matching_complement(g: Graph, active: frozenset[int]) -> list[Pair]:
    """Non-matching edges of a maximum matching on a max-degree-2 graph,
    computed greedily per path or cycle component (exact there)."""
    deletions: list[Pair] = []
    for comp in _components(g, active):
        degrees = {v: len(g.adj[v] & set(comp)) for v in comp}
        assert all(d <= 2 for d in degrees.values())
        endpoints = sorted(v for v in comp if degrees[v] == 1)
        start = endpoints[0] if endpoints else min(comp)
        walk: list[Pair] = []
        prev, cur = None, start
        while True:
            nxts = [x for x in sorted(g.adj[cur] & set(comp)) if x != prev]
            if not nxts:
                break
            nxt = nxts[0]
            walk.append(ordered_pair(cur, nxt))
            if nxt == start:
                break
            prev, cur = cur, nxt
        is_cycle = not endpoints
        limit = len(walk) - 1 if is_cycle else len(walk)
        matched = {walk[i] for i in range(0, limit, 2)}
        deletions.extend(e for e in walk if e not in matched)
    return sorted(set(deletions))


def branch_solve_p3(inst: Instance) -> tuple[ClusterSolution | None, SolveStats]:
    """Search tree for instances packed with induced P3s (t = 1).

    Per node: exhaust rules 7, 6 and the near-twin rules, reject when the
    budget drops under the packing size, pack a fresh P3 when none is packed,
    then branch (factor <= 4). When no branching rule applies the residual
    active graph has maximum degree 2 and no clique component, where deleting
    everything outside a maximum matching is optimal.
    """
    stats = SolveStats("p3-packing")
    for part in inst.packing.parts:
        sub = inst.host.induced(part)
        if sub.n != 3 or sorted(sub.degree(i) for i in range(3)) != [1, 1, 2]:
            raise ValueError("branch_solve_p3 needs an induced-P3 packing")
    ell0 = max(inst.ell, 0)

    def reduce_node(g: Graph, active: frozenset[int], parts: list[frozenset[int]], k: int):
        while True:
            comps = _components(g, active)
            cliques = [c for c in comps if _is_clique(g, c)]
            if cliques:
                dropped = {v for c in cliques for v in c}
                assert all(not (part & dropped) for part in parts)
                active = active - dropped
                stats.count_rule("rule7", len(cliques))
                continue
            found = _find_rule6(g, active)
            if found is not None:
                _, crossing = found
                g = g.with_toggled(crossing)
                k -= len(crossing)
                stats.count_rule("rule6")
                parts = _maintain_parts(g, parts, crossing)
                continue
            tw = _find_twin_edit(g, active)
            if tw is not None:
                rule, pairs = tw
                g = g.with_toggled(pairs)
                k -= 1
                stats.count_rule(rule)
                parts = _maintain_parts(g, parts, pairs)
                continue
            return g, active, parts, k

    def search(g: Graph, active: frozenset[int], parts: list[frozenset[int]],
               k: int, depth: int) -> Graph | None:
        g, active, parts, k = reduce_node(g, active, parts, k)
        if k < 0:
            return None
        p3s = _p3s_within(g, active)
        if not p3s:
            return g
        if k - len(parts) < 0:
            return None
        if not parts:
            parts = [frozenset(p3s[0])]
            stats.count_rule("pack-new-p3")
            if k - len(parts) < 0:
                return None
        found = _find_branch(g, active, parts)
        if found is None:
            # endgame: max degree 2, no clique components
            comps = _components(g, active)
            assert all(not _is_clique(g, c) for c in comps)
            deletions = _matching_complement(g, active)
            if len(deletions) <= k:
                return g.with_toggled(deletions)
            return None
        _, branches = found
        stats.enter_branch(depth + 1, len(branches))
        assert len(branches) <= 4
        for pairs, retire in branches:
            parts2 = [p for j, p in enumerate(parts) if j != retire]
            g2 = g.with_toggled(pairs)
            parts2 = _maintain_parts(g2, parts2, pairs)
            res = search(g2, active, parts2, k - len(pairs), depth + 1)
            if res is not None:
                return res
        return None

    final = search(inst.host, frozenset(range(inst.host.n)),
                   list(inst.packing.parts), inst.k, 0)
    assert stats.max_depth <= ell0
    if final is None:
        return None, stats
    sol = _solution(inst.host, final)
    assert len(sol.edits) <= inst.k
    return sol, stats


def solve_cost_t_ce(inst: Instance, t: int | None = None) -> ClusterSolution | None:
    """Cost-t pipeline: reduction rule, (2t+1)ell rejection, plain engine
    with the capped budget."""
    reduced, _ = apply_rule3_all(inst)
    t_eff = max(t or 1, max(reduced.packing.costs, default=1))
    h, ell = bounds(reduced)
    if reduced.k < 0 or reduced.k > (2 * t_eff + 1) * ell:
        return None
    budget = min(reduced.k, (2 * t_eff + 1) * ell)
    sol = exact_ce(reduced.host, budget)
    if sol is None:
        return None
    final = reduced.host.with_toggled(sol.edits.pairs())
    return _solution(inst.host, final)
