"""Text formats for graphs, tournaments, packings, edit sets and stats.

All formats ignore blank lines and '#' comments, are 0-indexed, and are
written in a canonical sorted order so identical inputs produce identical
files.
"""

from __future__ import annotations

import json

from .errors import InputFormatError
from .graphs import DELETE, INSERT, REVERSE, EditSet, Graph, Tournament
from .packing import EDGE_MODE, VERTEX_MODE, Packing


def _data_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _int_fields(line: str, count: int, what: str) -> list[int]:
    fields = line.split()
    if len(fields) != count:
        raise InputFormatError(f"expected {count} fields in {what} line: {line!r}")
    try:
        return [int(f) for f in fields]
    except ValueError as exc:
        raise InputFormatError(f"non-integer in {what} line: {line!r}") from exc


def write_graph(g: Graph) -> str:
    lines = [f"graph {g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    lines = _data_lines(text)
    if not lines or not lines[0].startswith("graph"):
        raise InputFormatError("missing 'graph n m' header")
    fields = lines[0].split()
    if len(fields) != 3:
        raise InputFormatError(f"bad graph header: {lines[0]!r}")
    try:
        n, m = int(fields[1]), int(fields[2])
    except ValueError as exc:
        raise InputFormatError(f"bad graph header: {lines[0]!r}") from exc
    edges = [tuple(_int_fields(line, 2, "edge")) for line in lines[1:]]
    if len(edges) != m:
        raise InputFormatError(f"header says {m} edges, found {len(edges)}")
    try:
        g = Graph.from_edges(n, edges)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc
    if g.m != m:
        raise InputFormatError("duplicate edges in input")
    return g


def write_tournament(t: Tournament) -> str:
    lines = [f"tournament {t.n}"]
    lines.extend(f"{u} {v}" for u, v in sorted(t.arcs()))
    return "\n".join(lines) + "\n"


def read_tournament(text: str) -> Tournament:
    lines = _data_lines(text)
    if not lines or not lines[0].startswith("tournament"):
        raise InputFormatError("missing 'tournament n' header")
    fields = lines[0].split()
    if len(fields) != 2:
        raise InputFormatError(f"bad tournament header: {lines[0]!r}")
    try:
        n = int(fields[1])
    except ValueError as exc:
        raise InputFormatError(f"bad tournament header: {lines[0]!r}") from exc
    arcs = [tuple(_int_fields(line, 2, "arc")) for line in lines[1:]]
    if len(arcs) != n * (n - 1) // 2:
        raise InputFormatError(
            f"a tournament on {n} vertices needs {n * (n - 1) // 2} arcs, found {len(arcs)}")
    try:
        return Tournament.from_arcs(n, arcs)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def write_packing(p: Packing) -> str:
    lines = [f"mode {p.mode}"]
    for part, cost in zip(p.parts, p.costs):
        lines.append(" ".join(str(v) for v in sorted(part)) + f" | {cost}")
    return "\n".join(lines) + "\n"


def read_packing(text: str) -> Packing:
    lines = _data_lines(text)
    if not lines or not lines[0].startswith("mode"):
        raise InputFormatError("missing 'mode vertex|edge' header")
    mode = lines[0].split()[-1]
    if mode not in (VERTEX_MODE, EDGE_MODE):
        raise InputFormatError(f"unknown packing mode {mode!r}")
    parts, costs = [], []
    for line in lines[1:]:
        if "|" in line:
            vert_part, cost_part = line.split("|", 1)
            try:
                cost = int(cost_part.strip())
            except ValueError as exc:
                raise InputFormatError(f"bad cost in packing line: {line!r}") from exc
        else:
            vert_part, cost = line, 1
        try:
            verts = [int(f) for f in vert_part.split()]
        except ValueError as exc:
            raise InputFormatError(f"bad vertex id in packing line: {line!r}") from exc
        if not verts:
            raise InputFormatError(f"empty part in packing line: {line!r}")
        parts.append(frozenset(verts))
        costs.append(cost)
    return Packing.of(parts, mode, costs)


_OPS = {DELETE, INSERT, REVERSE}


def write_edits(e: EditSet) -> str:
    lines = [f"{op} {u} {v}" for u, v, op in e.ops()]
    return "\n".join(lines) + ("\n" if lines else "")


def read_edits(text: str) -> EditSet:
    ops = []
    for line in _data_lines(text):
        fields = line.split()
        if len(fields) != 3 or fields[0] not in _OPS:
            raise InputFormatError(f"bad edit line: {line!r}")
        try:
            ops.append((int(fields[1]), int(fields[2]), fields[0]))
        except ValueError as exc:
            raise InputFormatError(f"bad edit line: {line!r}") from exc
    try:
        return EditSet.of(ops)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def write_stats(stats: dict) -> str:
    return json.dumps(stats, sort_keys=True, indent=1) + "\n"
