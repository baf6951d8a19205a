"""Brute-force ground-truth engines.

These are the independent reference implementations used by the test suite and
exposed through the CLI ``oracle`` subcommand. They enumerate candidate
solutions outright and are protected by hard size caps: exceeding a cap raises
SizeCapError rather than silently running forever, and an optimum above the
requested kmax raises Exceeded.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .errors import Exceeded, SizeCapError
from .graphs import Graph, Pair, Tournament

EDIT_ORACLE_MAX_N = 12
EDIT_ORACLE_MAX_K = 6
FAS_ORACLE_MAX_N = 8
PQ_ORACLE_MAX_N = 24
PQ_ORACLE_MAX_K = 8


def _masks(g: Graph) -> list[int]:
    return g.adjacency_masks()


def _toggle(masks: list[int], u: int, v: int) -> None:
    masks[u] ^= 1 << v
    masks[v] ^= 1 << u


def _has_triangle(masks: list[int], n: int) -> bool:
    for u in range(n):
        mu = masks[u] >> (u + 1)
        v = u + 1
        while mu:
            if mu & 1 and masks[u] & masks[v]:
                return True
            mu >>= 1
            v += 1
    return False


def _has_p3(masks: list[int], n: int) -> bool:
    for u in range(n):
        mu = masks[u] >> (u + 1)
        v = u + 1
        while mu:
            if mu & 1:
                # some w != u,v adjacent to exactly one endpoint of edge (u,v)
                if (masks[u] ^ masks[v]) & ~((1 << u) | (1 << v)):
                    return True
            mu >>= 1
            v += 1
    return False


def brute_edit_optimum(g: Graph, family: str, kmax: int) -> int:
    """Minimum edit-set size making g family-free, by subset enumeration.

    family "triangle": deletion subsets of the edge set only (edge deletions
    never create triangles, and insertions never help destroy them).
    family "p3": all vertex-pair subsets (cluster editing inserts and deletes).
    """
    if g.n > EDIT_ORACLE_MAX_N:
        raise SizeCapError(f"edit oracle capped at n <= {EDIT_ORACLE_MAX_N}, got {g.n}")
    if kmax > EDIT_ORACLE_MAX_K:
        raise SizeCapError(f"edit oracle capped at kmax <= {EDIT_ORACLE_MAX_K}, got {kmax}")
    if family == "triangle":
        universe = g.edges()
        free = _has_triangle
    elif family == "p3":
        universe = list(combinations(range(g.n), 2))
        free = _has_p3
    else:
        raise ValueError(f"no edit oracle for family {family!r}")
    base = _masks(g)
    if not free(base, g.n):
        return 0
    for size in range(1, kmax + 1):
        for subset in combinations(universe, size):
            masks = list(base)
            for u, v in subset:
                _toggle(masks, u, v)
            if not free(masks, g.n):
                return size
    raise Exceeded(kmax)


def brute_fas_optimum(t: Tournament) -> int:
    """Minimum feedback arc set size by scanning all vertex permutations."""
    if t.n > FAS_ORACLE_MAX_N:
        raise SizeCapError(f"FAS oracle capped at n <= {FAS_ORACLE_MAX_N}, got {t.n}")
    best = t.m
    for order in permutations(range(t.n)):
        backward = 0
        for i, u in enumerate(order):
            for v in order[i + 1:]:
                if t.has_arc(v, u):
                    backward += 1
            if backward >= best:
                break
        best = min(best, backward)
        if best == 0:
            return 0
    return best


def induced_pq_sets(g: Graph, q: int, alive: frozenset[int] | None = None) -> list[tuple[int, ...]]:
    """Vertex sets of all induced P_q paths, as sorted tuples, each once."""
    if q < 2:
        raise ValueError("paths need q >= 2")
    vertices = sorted(range(g.n) if alive is None else alive)
    allowed = set(vertices)
    found = set()

    def extend(path: list[int], used: set[int]) -> None:
        if len(path) == q:
            found.add(tuple(sorted(path)))
            return
        last = path[-1]
        for nxt in sorted(g.adj[last]):
            if nxt not in allowed or nxt in used:
                continue
            # induced: the new vertex may touch only the current path end
            if any(g.has_edge(nxt, p) for p in path[:-1]):
                continue
            path.append(nxt)
            used.add(nxt)
            extend(path, used)
            path.pop()
            used.discard(nxt)

    for start in vertices:
        extend([start], {start})
    return sorted(found)


def has_induced_pq(g: Graph, q: int, alive: frozenset[int]) -> bool:
    allowed = alive

    def extend(path: list[int], used: set[int]) -> bool:
        if len(path) == q:
            return True
        last = path[-1]
        for nxt in g.adj[last]:
            if nxt not in allowed or nxt in used:
                continue
            if any(g.has_edge(nxt, p) for p in path[:-1]):
                continue
            path.append(nxt)
            used.add(nxt)
            if extend(path, used):
                return True
            path.pop()
            used.discard(nxt)
        return False

    # a path and its reverse are both explored; acceptable at oracle scale
    return any(extend([s], {s}) for s in sorted(allowed))


def brute_pq_vertex_deletion(g: Graph, q: int, kmax: int) -> int:
    """Minimum number of vertex deletions leaving no induced P_q."""
    if g.n > PQ_ORACLE_MAX_N:
        raise SizeCapError(f"P_q oracle capped at n <= {PQ_ORACLE_MAX_N}, got {g.n}")
    if kmax > PQ_ORACLE_MAX_K:
        raise SizeCapError(f"P_q oracle capped at kmax <= {PQ_ORACLE_MAX_K}, got {kmax}")
    everything = frozenset(range(g.n))
    if not has_induced_pq(g, q, everything):
        return 0
    # only vertices on some induced P_q are worth deleting
    candidates = sorted({v for s in induced_pq_sets(g, q) for v in s})
    for size in range(1, kmax + 1):
        for subset in combinations(candidates, size):
            if not has_induced_pq(g, q, everything - frozenset(subset)):
                return size
    raise Exceeded(kmax)


def brute_hitting_set_optimum(n: int, hyperedges, kmax: int) -> int:
    """Minimum hitting set size by vertex-subset enumeration."""
    edges = [frozenset(e) for e in hyperedges]
    if not edges:
        return 0
    if kmax > PQ_ORACLE_MAX_K:
        raise SizeCapError(f"hitting-set oracle capped at kmax <= {PQ_ORACLE_MAX_K}")
    candidates = sorted({v for e in edges for v in e})
    for size in range(0, kmax + 1):
        for subset in combinations(candidates, size):
            chosen = set(subset)
            if all(chosen & e for e in edges):
                return size
    raise Exceeded(kmax)


def kq_vertex_sets(g: Graph, q: int) -> list[tuple[int, ...]]:
    """All K_q vertex sets, by combination scan with adjacency pre-filtering."""
    eligible = [v for v in range(g.n) if g.degree(v) >= q - 1]
    out = []
    for combo in combinations(eligible, q):
        if all(g.has_edge(u, v) for u, v in combinations(combo, 2)):
            out.append(combo)
    return out


def kq_deletion_optimum(g: Graph, q: int, kmax: int) -> int:
    """Minimum number of edge deletions making g K_q-free.

    Edge deletions never create cliques, so every K_q of any deletion result is
    already a K_q of g; the problem is a minimum hitting set over the edge sets
    of the enumerated cliques, solved by bounded branching on an unhit clique.
    """
    cliques = [frozenset((a, b) for a, b in combinations(c, 2))
               for c in kq_vertex_sets(g, q)]
    if not cliques:
        return 0

    best: list[int] = [kmax + 1]

    def branch(remaining: list[frozenset[Pair]], used: int) -> None:
        if used >= best[0]:
            return
        if not remaining:
            best[0] = used
            return
        target = min(remaining, key=lambda c: sorted(c))
        for edge in sorted(target):
            rest = [c for c in remaining if edge not in c]
            branch(rest, used + 1)

    branch(cliques, 0)
    if best[0] > kmax:
        raise Exceeded(kmax)
    return best[0]
