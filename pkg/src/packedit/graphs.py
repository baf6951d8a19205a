"""Undirected graphs, tournaments, edit sets and forbidden-subgraph enumeration.

Vertices are dense integers 0..n-1. Graph and Tournament are immutable; every
edit produces a new object. Induced subgraphs carry an ``origin`` tuple mapping
their local ids back to the host's ids. All enumerations are returned in
canonical order (lexicographic on the sorted id tuple) so downstream algorithms
are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import EditMismatch, FamilyMismatch

Pair = tuple[int, int]
Triple = tuple[int, int, int]

DELETE = "del"
INSERT = "ins"
REVERSE = "rev"

TRIANGLE = "triangle"
P3 = "p3"
DIRECTED_TRIANGLE = "directed-triangle"


def ordered_pair(u: int, v: int) -> Pair:
    if u == v:
        raise ValueError(f"pair endpoints must differ, got ({u}, {v})")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with per-vertex neighbor sets."""

    n: int
    adj: tuple[frozenset[int], ...]
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    @staticmethod
    def from_edges(n: int, edges, origin=None) -> "Graph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            u, v = ordered_pair(u, v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return Graph(n, tuple(frozenset(a) for a in adj),
                     None if origin is None else tuple(origin))

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph.from_edges(n, ())

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph.from_edges(n, combinations(range(n), 2))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[Pair]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def with_toggled(self, pairs) -> "Graph":
        """Symmetric difference with the given vertex pairs."""
        adj = [set(a) for a in self.adj]
        for u, v in pairs:
            u, v = ordered_pair(u, v)
            if v in adj[u]:
                adj[u].discard(v)
                adj[v].discard(u)
            else:
                adj[u].add(v)
                adj[v].add(u)
        return Graph(self.n, tuple(frozenset(a) for a in adj), self.origin)

    def induced(self, vertices) -> "Graph":
        """Induced subgraph; local ids follow the sorted vertex order."""
        verts = sorted(vertices)
        index = {v: i for i, v in enumerate(verts)}
        edges = [(index[u], index[v]) for u, v in combinations(verts, 2)
                 if self.has_edge(u, v)]
        return Graph.from_edges(len(verts), edges, origin=verts)

    def internal_edges(self, vertices) -> list[Pair]:
        """Edges with both endpoints in ``vertices``, in host ids."""
        vs = sorted(vertices)
        return [(u, v) for u, v in combinations(vs, 2) if self.has_edge(u, v)]

    def adjacency_masks(self) -> list[int]:
        """Neighbor sets as int bitmasks (bit v set iff v is a neighbor)."""
        return [sum(1 << v for v in a) for a in self.adj]


@dataclass(frozen=True)
class Tournament:
    """Complete orientation of K_n; ``succ[v]`` is the out-neighborhood."""

    n: int
    succ: tuple[frozenset[int], ...]
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    @staticmethod
    def from_arcs(n: int, arcs, origin=None) -> "Tournament":
        succ = [set() for _ in range(n)]
        seen = set()
        for u, v in arcs:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad arc ({u}, {v}) for n={n}")
            key = ordered_pair(u, v)
            if key in seen:
                raise ValueError(f"pair {key} oriented twice")
            seen.add(key)
            succ[u].add(v)
        if len(seen) != n * (n - 1) // 2:
            raise ValueError("not a tournament: some pair has no arc")
        return Tournament(n, tuple(frozenset(s) for s in succ),
                          None if origin is None else tuple(origin))

    @staticmethod
    def transitive(n: int) -> "Tournament":
        return Tournament.from_arcs(n, combinations(range(n), 2))

    @property
    def m(self) -> int:
        return self.n * (self.n - 1) // 2

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.succ[u]

    def arcs(self) -> list[Pair]:
        return [(u, v) for u in range(self.n) for v in sorted(self.succ[u])]

    def out_degree(self, v: int) -> int:
        return len(self.succ[v])

    def with_reversed(self, pairs) -> "Tournament":
        succ = [set(s) for s in self.succ]
        for u, v in pairs:
            if v in succ[u]:
                succ[u].discard(v)
                succ[v].add(u)
            elif u in succ[v]:
                succ[v].discard(u)
                succ[u].add(v)
            else:
                raise ValueError(f"no arc between {u} and {v}")
        return Tournament(self.n, tuple(frozenset(s) for s in succ), self.origin)

    def induced(self, vertices) -> "Tournament":
        verts = sorted(vertices)
        index = {v: i for i, v in enumerate(verts)}
        arcs = [(index[u], index[v]) if self.has_arc(u, v) else (index[v], index[u])
                for u, v in combinations(verts, 2)]
        return Tournament.from_arcs(len(verts), arcs, origin=verts)

    def internal_arcs(self, vertices) -> list[Pair]:
        """Arcs with both endpoints in ``vertices``, in host ids, canonical
        order of the underlying unordered pair."""
        out = []
        for u, v in combinations(sorted(vertices), 2):
            out.append((u, v) if self.has_arc(u, v) else (v, u))
        return out


@dataclass(frozen=True)
class EditSet:
    """Set of tagged vertex-pair edits: delete/insert for graphs, reverse for
    tournaments. Each pair appears at most once."""

    edits: frozenset[tuple[int, int, str]]

    @staticmethod
    def of(ops) -> "EditSet":
        seen = set()
        norm = set()
        for u, v, op in ops:
            u, v = ordered_pair(u, v)
            if op not in (DELETE, INSERT, REVERSE):
                raise ValueError(f"unknown edit op {op!r}")
            if (u, v) in seen:
                raise ValueError(f"pair ({u}, {v}) edited twice")
            seen.add((u, v))
            norm.add((u, v, op))
        return EditSet(frozenset(norm))

    @staticmethod
    def deletions(pairs) -> "EditSet":
        return EditSet.of((u, v, DELETE) for u, v in pairs)

    @staticmethod
    def insertions(pairs) -> "EditSet":
        return EditSet.of((u, v, INSERT) for u, v in pairs)

    @staticmethod
    def reversals(pairs) -> "EditSet":
        return EditSet.of((u, v, REVERSE) for u, v in pairs)

    @staticmethod
    def empty() -> "EditSet":
        return EditSet(frozenset())

    def ops(self) -> list[tuple[int, int, str]]:
        return sorted(self.edits)

    def pairs(self) -> frozenset[Pair]:
        return frozenset((u, v) for u, v, _ in self.edits)

    def inverse(self) -> "EditSet":
        flip = {DELETE: INSERT, INSERT: DELETE, REVERSE: REVERSE}
        return EditSet(frozenset((u, v, flip[op]) for u, v, op in self.edits))

    def merged_with(self, other: "EditSet") -> "EditSet":
        return EditSet.of(list(self.edits) + list(other.edits))

    def __len__(self) -> int:
        return len(self.edits)

    def __iter__(self):
        return iter(self.ops())

    def __bool__(self) -> bool:
        return bool(self.edits)


def graph_diff(before: Graph, after: Graph) -> EditSet:
    """Edit set transforming ``before`` into ``after`` (same vertex count)."""
    if before.n != after.n:
        raise ValueError("graphs differ in vertex count")
    ops = []
    for u in range(before.n):
        for v in (before.adj[u] ^ after.adj[u]):
            if u < v:
                ops.append((u, v, DELETE if v in before.adj[u] else INSERT))
    return EditSet.of(ops)


def tournament_diff(before: Tournament, after: Tournament) -> EditSet:
    """Reversal set transforming ``before`` into ``after``."""
    if before.n != after.n:
        raise ValueError("tournaments differ in vertex count")
    ops = []
    for u, v in combinations(range(before.n), 2):
        if before.has_arc(u, v) != after.has_arc(u, v):
            ops.append((u, v, REVERSE))
    return EditSet.of(ops)


def apply_edits(g, s: EditSet, validate: bool = True):
    """Apply an edit set; returns a new Graph or Tournament.

    With ``validate`` (the default), a delete targeting a non-edge, an insert
    targeting an edge, or an op inappropriate for the host type raises
    EditMismatch. With ``validate=False`` the pair set is applied as a plain
    symmetric difference (graphs) or reversal (tournaments), which makes
    application an involution.
    """
    if isinstance(g, Graph):
        if validate:
            for u, v, op in s.edits:
                if op == REVERSE:
                    raise EditMismatch(f"reverse op ({u}, {v}) on undirected graph")
                if op == DELETE and not g.has_edge(u, v):
                    raise EditMismatch(f"delete ({u}, {v}) targets a non-edge")
                if op == INSERT and g.has_edge(u, v):
                    raise EditMismatch(f"insert ({u}, {v}) targets an edge")
        return g.with_toggled(s.pairs())
    if isinstance(g, Tournament):
        if validate:
            for u, v, op in s.edits:
                if op != REVERSE:
                    raise EditMismatch(f"op {op!r} on ({u}, {v}): tournaments only reverse")
        return g.with_reversed(s.pairs())
    raise TypeError(f"unsupported host type {type(g)!r}")


def enumerate_triangles(g: Graph) -> list[Triple]:
    """All K3 vertex triples, each once, sorted lexicographically."""
    out = []
    for u, v in g.edges():
        for w in g.adj[u] & g.adj[v]:
            if w > v:
                out.append((u, v, w))
    out.sort()
    return out


def enumerate_p3(g: Graph) -> list[Triple]:
    """All induced P3s as (u, v, w) with center v and u < w, each once.

    Sorted by the ascending id triple of the three vertices, so the order is
    stable under the canonical-ordering convention.
    """
    out = []
    for v in range(g.n):
        for u, w in combinations(sorted(g.adj[v]), 2):
            if not g.has_edge(u, w):
                out.append((u, v, w))
    out.sort(key=lambda t: tuple(sorted(t)))
    return out


def enumerate_directed_triangles(t: Tournament) -> list[Triple]:
    """All 3-vertex directed cycles as ascending id triples."""
    out = []
    for a, b, c in combinations(range(t.n), 3):
        # cyclic iff each vertex beats exactly one of the other two
        d_a = int(t.has_arc(a, b)) + int(t.has_arc(a, c))
        if d_a != 1:
            continue
        d_b = int(t.has_arc(b, a)) + int(t.has_arc(b, c))
        if d_b == 1:
            out.append((a, b, c))
    return out


def first_triangle(g: Graph) -> Triple | None:
    for u, v in g.edges():
        common = g.adj[u] & g.adj[v]
        for w in sorted(common):
            if w > v:
                return (u, v, w)
    return None


def first_p3(g: Graph) -> Triple | None:
    p3s = enumerate_p3(g)
    return p3s[0] if p3s else None


def first_directed_triangle(t: Tournament) -> Triple | None:
    for a, b, c in combinations(range(t.n), 3):
        d_a = int(t.has_arc(a, b)) + int(t.has_arc(a, c))
        if d_a != 1:
            continue
        if int(t.has_arc(b, a)) + int(t.has_arc(b, c)) == 1:
            return (a, b, c)
    return None


def check_f_free(g, family: str) -> bool:
    """True iff the host contains no member of the forbidden family."""
    if isinstance(g, Graph):
        if family == TRIANGLE:
            return first_triangle(g) is None
        if family == P3:
            return first_p3(g) is None
        raise FamilyMismatch(f"family {family!r} not defined for undirected graphs")
    if isinstance(g, Tournament):
        if family == DIRECTED_TRIANGLE:
            return first_directed_triangle(g) is None
        raise FamilyMismatch(f"family {family!r} not defined for tournaments")
    raise TypeError(f"unsupported host type {type(g)!r}")


def topological_order(t: Tournament) -> tuple[int, ...] | None:
    """Topological order of an acyclic tournament, else None.

    An acyclic tournament is transitive, so its out-degrees are pairwise
    distinct and sorting by descending out-degree is a topological order.
    """
    order = sorted(range(t.n), key=lambda v: (-t.out_degree(v), v))
    for i, u in enumerate(order):
        for v in order[i + 1:]:
            if not t.has_arc(u, v):
                return None
    return tuple(order)


def backward_arcs(t: Tournament, order) -> list[Pair]:
    """Arcs of ``t`` pointing right-to-left under ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    return sorted((min(u, v), max(u, v))
                  for u, v in t.arcs() if pos[u] > pos[v])
