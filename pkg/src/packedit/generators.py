"""Instance generators: the three SAT-based hardness constructions, the
induced-path hypergraph transform, and seeded random/planted instances.

All three constructions emit (graph, packing, k) with k equal to the packing
lower bound, i.e. ell = 0, and are satisfiability-preserving: the formula is
satisfiable iff the instance is solvable with exactly k modifications.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from random import Random

from .errors import MalformedFormula, QTooSmall, SizeCapError
from .graphs import Graph, Tournament
from .oracles import induced_pq_sets
from .packing import EDGE_MODE, VERTEX_MODE, Packing

GEN_MAX_N = 512
SAT_MAX_VARS = 20


@dataclass(frozen=True)
class CnfFormula:
    """CNF with 1-based variable indexing; clauses are literal tuples."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(num_vars: int, clauses) -> "CnfFormula":
        norm = tuple(tuple(int(l) for l in c) for c in clauses)
        for clause in norm:
            for lit in clause:
                if lit == 0 or abs(lit) > num_vars:
                    raise MalformedFormula(f"literal {lit} out of range")
        return CnfFormula(num_vars, norm)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    hyperedges: tuple[frozenset[int], ...]

    def __post_init__(self):
        sizes = {len(e) for e in self.hyperedges}
        assert len(sizes) <= 1, "hyperedges must be uniform"


def _require_distinct_vars(phi: CnfFormula, width: int) -> None:
    for idx, clause in enumerate(phi.clauses):
        if len(clause) != width:
            raise MalformedFormula(
                f"clause {idx} has {len(clause)} literals, needs exactly {width}")
        if len({abs(l) for l in clause}) != width:
            raise MalformedFormula(f"clause {idx} repeats a variable")


def satisfiable(phi: CnfFormula) -> bool:
    """Brute-force satisfiability over all assignments."""
    if phi.num_vars > SAT_MAX_VARS:
        raise SizeCapError(f"SAT check capped at {SAT_MAX_VARS} variables")
    for bits in range(1 << phi.num_vars):
        ok = True
        for clause in phi.clauses:
            if not any((bits >> (abs(l) - 1)) & 1 == (1 if l > 0 else 0)
                       for l in clause):
                ok = False
                break
        if ok:
            return True
    return False


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = None
    tokens: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise MalformedFormula(f"bad DIMACS header: {line!r}")
            num_vars = int(fields[2])
            continue
        tokens.extend(int(tok) for tok in line.split())
    if num_vars is None:
        raise MalformedFormula("missing 'p cnf' header")
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            if current:
                clauses.append(tuple(current))
                current = []
        else:
            current.append(tok)
    if current:
        raise MalformedFormula("last clause not terminated by 0")
    return CnfFormula.of(num_vars, clauses)


def format_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    lines.extend(" ".join(str(l) for l in clause) + " 0" for clause in phi.clauses)
    return "\n".join(lines) + "\n"


def cons1_triangle(phi: CnfFormula) -> tuple[Graph, Packing, int]:
    """Triangle Deletion instance with an edge-disjoint triangle packing.

    Per variable a triangle with distinguished true/false edges; per clause a
    triangle whose edges stand for its literals, each connected to the matching
    variable edge through two adjacent triangles A (packed) and B. Deleting
    exactly one edge per packed triangle is possible iff the formula is
    satisfiable.
    """
    _require_distinct_vars(phi, 3)
    nv = phi.num_vars
    nc = len(phi.clauses)
    n = 3 * nv + 3 * nc
    edges: list[tuple[int, int]] = []
    parts: list[frozenset[int]] = []

    def var_base(i0: int) -> int:
        return 3 * i0

    for i0 in range(nv):
        a = var_base(i0)
        edges += [(a, a + 1), (a + 1, a + 2), (a, a + 2)]
        parts.append(frozenset((a, a + 1, a + 2)))

    connector_parts: list[frozenset[int]] = []
    for j, clause in enumerate(phi.clauses):
        base = 3 * nv + 3 * j
        c = (base, base + 1, base + 2)
        edges += [(c[0], c[1]), (c[1], c[2]), (c[2], c[0])]
        clause_edges = [(c[0], c[1]), (c[1], c[2]), (c[2], c[0])]
        for t, lit in enumerate(clause):
            u, v = clause_edges[t]
            i0 = abs(lit) - 1
            a = var_base(i0)
            if lit > 0:
                apex, b_other = a, a + 1          # true edge {x1, x2}
            else:
                apex, b_other = a + 2, a + 1      # false edge {x2, x3}
            edges += [(u, apex), (v, apex), (v, b_other)]
            connector_parts.append(frozenset((u, v, apex)))

    g = Graph.from_edges(n, edges)
    packing = Packing.of(parts + connector_parts, EDGE_MODE)
    return g, packing, len(packing)


def cons2_kq(phi: CnfFormula, q: int) -> tuple[Graph, Packing, int]:
    """K_q-free deletion instance with a vertex-disjoint K_q packing (q >= 6).

    Per variable a q-clique with two distinguished disjoint edges; per clause
    a q-clique whose three distinguished literal edges are identified with the
    matching variable edges, so only q-6 clause vertices are fresh. The packed
    variable cliques alone give k = #variables.
    """
    if q < 6:
        raise QTooSmall(f"q must be >= 6, got {q}")
    _require_distinct_vars(phi, 3)
    nv = phi.num_vars
    n = q * nv + (q - 6) * len(phi.clauses)
    edges: set[tuple[int, int]] = set()
    parts: list[frozenset[int]] = []

    for i0 in range(nv):
        block = range(q * i0, q * i0 + q)
        edges.update(combinations(block, 2))
        parts.append(frozenset(block))

    for j, clause in enumerate(phi.clauses):
        members: list[int] = []
        for lit in clause:
            base = q * (abs(lit) - 1)
            members += [base, base + 1] if lit > 0 else [base + 2, base + 3]
        fresh_base = q * nv + (q - 6) * j
        members += list(range(fresh_base, fresh_base + q - 6))
        edges.update((min(a, b), max(a, b)) for a, b in combinations(members, 2))

    g = Graph.from_edges(n, sorted(edges))
    packing = Packing.of(parts, VERTEX_MODE)
    return g, packing, len(packing)


def cons3_pq(phi: CnfFormula, q: int) -> tuple[Graph, Packing, int]:
    """P_q-free vertex deletion instance with a vertex-disjoint P_q packing.

    Per variable a cycle alternating true/false vertices (four per
    occurrence), attachment paths on every segment, and per clause an induced
    P_q wired through its literal vertices (ordered by variable index; the
    unique segment numbering keeps those vertices distinct). One attachment
    path plus its two segment vertices form a packed P_q per segment, so
    k = sum of 2*occurrences.
    """
    if q < 3:
        raise MalformedFormula(f"q must be >= 3, got {q}")
    _require_distinct_vars(phi, q)
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for j, clause in enumerate(phi.clauses):
        for lit in clause:
            occurrences.setdefault(abs(lit) - 1, []).append((j, lit))

    edges: list[tuple[int, int]] = []
    parts: list[frozenset[int]] = []
    literal_vertex: dict[tuple[int, int], int] = {}
    counter = 0

    def fresh(count: int) -> list[int]:
        nonlocal counter
        ids = list(range(counter, counter + count))
        counter += count
        return ids

    def attach_path(anchor: int) -> list[int]:
        path = fresh(q - 2)
        edges.extend(zip(path, path[1:]))
        edges.append((path[0], anchor))
        return path

    for i0 in sorted(occurrences):
        occs = occurrences[i0]
        alpha = len(occs)
        true_v: dict[int, int] = {}
        false_v: dict[int, int] = {}
        for j in range(1, 2 * alpha + 1):
            true_v[j], false_v[j] = fresh(2)
        for j in range(1, 2 * alpha + 1):
            edges.append((true_v[j], false_v[j]))
            if j < 2 * alpha:
                edges.append((false_v[j], true_v[j + 1]))
        edges.append((false_v[2 * alpha], true_v[1]))

        segment_attachment: dict[int, list[int]] = {}
        for j in range(2, 2 * alpha + 1, 2):
            segment_attachment[j] = attach_path(true_v[j])
            attach_path(false_v[j])
        for p, (clause_idx, lit) in enumerate(occs, start=1):
            j = 2 * p - 1
            if lit > 0:
                segment_attachment[j] = attach_path(false_v[j])
                literal_vertex[(clause_idx, i0)] = true_v[j]
            else:
                segment_attachment[j] = attach_path(true_v[j])
                literal_vertex[(clause_idx, i0)] = false_v[j]
        for j in range(1, 2 * alpha + 1):
            parts.append(frozenset(segment_attachment[j] + [true_v[j], false_v[j]]))

    for j, clause in enumerate(phi.clauses):
        pi = [literal_vertex[(j, abs(lit) - 1)] for lit in
              sorted(clause, key=abs)]
        edges.extend(zip(pi, pi[1:]))

    g = Graph.from_edges(counter, edges)

    for j, clause in enumerate(phi.clauses):
        pi = [literal_vertex[(j, abs(lit) - 1)] for lit in sorted(clause, key=abs)]
        for a, b in combinations(range(q), 2):
            expected = (b - a == 1)
            if g.has_edge(pi[a], pi[b]) != expected:
                raise MalformedFormula(
                    f"clause {j}: literal vertices do not induce a P_{q}")
    for part in parts:
        sub = g.induced(part)
        degs = sorted(sub.degree(i) for i in range(sub.n))
        assert degs == [1, 1] + [2] * (q - 2), "packed part must induce a P_q"

    packing = Packing.of(parts, VERTEX_MODE)
    return g, packing, len(packing)


def hitting_set_transform(g: Graph, q: int) -> Hypergraph:
    """Hypergraph on the same vertices with one hyperedge per induced P_q."""
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    return Hypergraph(g.n, tuple(frozenset(s) for s in induced_pq_sets(g, q)))


def gen_random(kind: str, n: int, seed: int, **params):
    """Seeded random instances: G(n, p) graphs, uniform tournaments, or
    planted cluster graphs perturbed by a given number of edge flips."""
    if n > GEN_MAX_N:
        raise SizeCapError(f"generator capped at n <= {GEN_MAX_N}")
    rng = Random(seed)
    if kind == "graph":
        p = params.get("p", 0.5)
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
        return Graph.from_edges(n, edges)
    if kind == "tournament":
        arcs = [(u, v) if rng.random() < 0.5 else (v, u)
                for u, v in combinations(range(n), 2)]
        return Tournament.from_arcs(n, arcs)
    if kind == "planted-clusters":
        sizes = params.get("sizes")
        if sizes is None:
            raise ValueError("planted-clusters needs sizes=[...]")
        if sum(sizes) != n:
            raise ValueError(f"sizes {sizes} do not sum to n={n}")
        flips = params.get("flips", 0)
        edges: set[tuple[int, int]] = set()
        start = 0
        for size in sizes:
            edges.update(combinations(range(start, start + size), 2))
            start += size
        g = Graph.from_edges(n, sorted(edges))
        all_pairs = list(combinations(range(n), 2))
        return g.with_toggled(rng.sample(all_pairs, flips))
    raise ValueError(f"unknown random kind {kind!r}")
