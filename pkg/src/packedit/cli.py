"""Command-line front end.

Exit codes: 0 solved/yes, 1 infeasible/no, 2 usage error, 3 input error,
4 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import cluster, fast, fileio, generators, oracles, triangle
from .errors import (Exceeded, InputFormatError, MalformedFormula,
                     PackeditError, QTooSmall, SizeCapError)
from .graphs import (DIRECTED_TRIANGLE, P3, TRIANGLE, EditSet, Graph,
                     Tournament, apply_edits, check_f_free,
                     first_directed_triangle, first_p3, first_triangle)
from .packing import (CLUSTER_EDIT, FAST, TRIANGLE_DEL, Instance, Packing,
                      bounds, greedy_pack, local_cost, validate_packing)

EXIT_SOLVED = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAP = 4

_FAMILY = {TRIANGLE_DEL: TRIANGLE, CLUSTER_EDIT: P3, FAST: DIRECTED_TRIANGLE}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def _load_host(problem: str, path: str):
    text = _read(path)
    if problem == FAST:
        return fileio.read_tournament(text)
    return fileio.read_graph(text)


def _load_instance(args) -> Instance:
    host = _load_host(args.problem, args.input)
    if getattr(args, "packing", None):
        packing = fileio.read_packing(_read(args.packing))
        # annotations are never trusted where they gate rejection
        costs = [local_cost(host.induced(p), args.problem, args.t)
                 for p in packing.parts]
        packing = Packing.of(packing.parts, packing.mode, costs)
    elif getattr(args, "auto_pack", False):
        packing = greedy_pack(host, args.problem, args.t)
    else:
        packing = Packing.empty()
    return Instance(host, packing, getattr(args, "k", 0) or 0, args.problem)


def _solve_once(inst: Instance, engine: str, t: int):
    """Returns (edits-or-None, stats-dict)."""
    if engine == "above-packing":
        if inst.problem == TRIANGLE_DEL:
            edits, stats = triangle.branch_solve(inst)
            return edits, stats.as_dict()
        if inst.problem == FAST:
            res, stats = fast.solve_above_packing_fast(inst, t)
            return (None if res is None else res.reversals), stats.as_dict()
        if all(len(p) == 3 for p in inst.packing.parts) and \
                all(c == 1 for c in inst.packing.costs):
            sol, stats = cluster.branch_solve_p3(inst)
            return (None if sol is None else sol.edits), stats.as_dict()
        sol = cluster.solve_cost_t_ce(inst, t)
        return (None if sol is None else sol.edits), {"engine": "cost-t-pipeline"}
    if engine == "plain":
        if inst.problem == TRIANGLE_DEL:
            return triangle.exact_solve(inst.host, inst.k), {"engine": "plain-triangle"}
        if inst.problem == FAST:
            res = fast.exact_fas(inst.host, inst.k)
            return (None if res is None else res.reversals), {"engine": "plain-fas"}
        sol = cluster.exact_ce(inst.host, inst.k)
        return (None if sol is None else sol.edits), {"engine": "plain-ce"}
    if engine == "oracle":
        if inst.problem == FAST:
            opt = oracles.brute_fas_optimum(inst.host)
        else:
            family = "triangle" if inst.problem == TRIANGLE_DEL else "p3"
            opt = oracles.brute_edit_optimum(inst.host, family,
                                             min(inst.k, oracles.EDIT_ORACLE_MAX_K))
        if opt <= inst.k:
            edits, _ = _solve_once(inst, "plain", t)
            return edits, {"engine": "oracle"}
        return None, {"engine": "oracle"}
    raise InputFormatError(f"unknown engine {engine!r}")


def _budget_ceiling(inst: Instance) -> int:
    if inst.problem == CLUSTER_EDIT:
        return inst.host.n * (inst.host.n - 1) // 2
    return inst.host.m


def cmd_solve(args) -> int:
    started = time.monotonic()
    inst = _load_instance(args)
    host = inst.host
    h, _ = bounds(inst)
    if args.optimize:
        k = h
        edits = stats = None
        while k <= _budget_ceiling(inst):
            trial = Instance(host, inst.packing, k, inst.problem)
            edits, stats = _solve_once(trial, args.engine, args.t)
            if edits is not None:
                break
            k += 1
        inst = Instance(host, inst.packing, k, inst.problem)
    else:
        if args.k is None:
            raise InputFormatError("solve needs --k or --optimize")
        edits, stats = _solve_once(inst, args.engine, args.t)

    out = {
        "n": host.n,
        "m": host.m,
        "k": inst.k,
        "h": h,
        "l": inst.k - h,
        "engine": stats.get("engine", args.engine),
        "branch_nodes": stats.get("branch_nodes", 0),
        "max_depth": stats.get("max_depth", 0),
        "solved": edits is not None,
        "wall_time_s": round(time.monotonic() - started, 6),
    }
    for key, value in stats.items():
        if key.startswith("rule_"):
            out[key] = value
    if args.stats:
        Path(args.stats).write_text(fileio.write_stats(out))
    if edits is None:
        print("INFEASIBLE")
        return EXIT_INFEASIBLE
    if args.emit_edits:
        Path(args.emit_edits).write_text(fileio.write_edits(edits))
    print(f"SOLVED k={inst.k} edits={len(edits)}")
    return EXIT_SOLVED


def cmd_reduce(args) -> int:
    inst = _load_instance(args)
    certificates = []
    if args.problem == TRIANGLE_DEL:
        reduced, edits, certificates = triangle.apply_rule1_all(inst)
    elif args.problem == FAST:
        reduced, edits = fast.apply_rule2_all(inst)
    else:
        reduced, edits = cluster.apply_rule3_all(inst)
        reduced, twin_edits = cluster.apply_local_twin_rules(reduced)
        cut, new_k, clique_edits = cluster.apply_clique_rules(reduced.host, reduced.k)
        edits = EditSet.of(list(edits.ops()) + list(twin_edits.ops())
                           + list(clique_edits.ops()))
        # the clique pass physically removes isolated clusters, so the
        # remaining packing is re-expressed in the reduced ids
        origin = {orig: new for new, orig in enumerate(cut.origin)}
        packing = Packing.of(
            [frozenset(origin[v] for v in part) for part in reduced.packing.parts],
            reduced.packing.mode, reduced.packing.costs)
        reduced = Instance(cut, packing, new_k, CLUSTER_EDIT)

    prefix = Path(args.out)
    host_path = prefix.with_suffix(".tournament" if args.problem == FAST else ".graph")
    writer = fileio.write_tournament if args.problem == FAST else fileio.write_graph
    host_path.write_text(writer(reduced.host))
    prefix.with_suffix(".packing").write_text(fileio.write_packing(reduced.packing))
    prefix.with_suffix(".edits").write_text(fileio.write_edits(edits))
    h, ell = bounds(reduced)
    print(f"reduced k={reduced.k} h={h} l={ell} applied={len(edits)}")
    for cert in certificates:
        tris = "; ".join(" ".join(map(str, t)) for t in cert.triangles)
        print(f"certificate part={cert.part_index} triangles: {tris}")
    return EXIT_SOLVED


def cmd_pack(args) -> int:
    host = _load_host(args.problem, args.input)
    packing = greedy_pack(host, args.problem, args.t)
    if args.out:
        Path(args.out).write_text(fileio.write_packing(packing))
    h = packing.h
    if args.k is not None:
        print(f"parts={len(packing)} h={h} l={args.k - h}")
    else:
        print(f"parts={len(packing)} h={h}")
    return EXIT_SOLVED


def cmd_gen(args) -> int:
    prefix = Path(args.out)
    if args.generator in ("cons1", "cons2", "cons3"):
        phi = generators.parse_dimacs(_read(args.cnf))
        if args.generator == "cons1":
            g, packing, k = generators.cons1_triangle(phi)
        elif args.generator == "cons2":
            g, packing, k = generators.cons2_kq(phi, args.q)
        else:
            g, packing, k = generators.cons3_pq(phi, args.q)
        prefix.with_suffix(".graph").write_text(fileio.write_graph(g))
        prefix.with_suffix(".packing").write_text(fileio.write_packing(packing))
        print(f"n={g.n} m={g.m} parts={len(packing)} k={k}")
        return EXIT_SOLVED
    if args.generator == "random":
        obj = generators.gen_random(args.kind, args.n, args.seed, p=args.p)
        if args.kind == "tournament":
            prefix.with_suffix(".tournament").write_text(fileio.write_tournament(obj))
        else:
            prefix.with_suffix(".graph").write_text(fileio.write_graph(obj))
        print(f"n={obj.n}")
        return EXIT_SOLVED
    sizes = [int(s) for s in args.sizes.split(",")]
    g = generators.gen_random("planted-clusters", sum(sizes), args.seed,
                              sizes=sizes, flips=args.flips)
    prefix.with_suffix(".graph").write_text(fileio.write_graph(g))
    print(f"n={g.n} m={g.m}")
    return EXIT_SOLVED


def _first_forbidden(host, problem: str):
    if problem == TRIANGLE_DEL:
        return first_triangle(host)
    if problem == FAST:
        return first_directed_triangle(host)
    return first_p3(host)


def cmd_verify(args) -> int:
    host = _load_host(args.problem, args.input)
    edits = fileio.read_edits(_read(args.edits))
    try:
        edited = apply_edits(host, edits)
    except PackeditError as exc:
        print(f"NO: edits do not apply: {exc}")
        return EXIT_INFEASIBLE
    if not check_f_free(edited, _FAMILY[args.problem]):
        witness = _first_forbidden(edited, args.problem)
        print(f"NO: forbidden subgraph survives: {' '.join(map(str, witness))}")
        return EXIT_INFEASIBLE
    if args.k is not None and len(edits) > args.k:
        print(f"NO: {len(edits)} edits exceed budget {args.k}")
        return EXIT_INFEASIBLE
    if args.packing:
        packing = fileio.read_packing(_read(args.packing))
        inst = Instance(host, packing, args.k or 0, args.problem)
        report = validate_packing(inst, args.t)
        if not report.ok:
            v = report.first
            print(f"NO: packing invalid: {v.kind} at part {v.part_index}: {v.detail}")
            return EXIT_INFEASIBLE
    print("OK")
    return EXIT_SOLVED


def cmd_oracle(args) -> int:
    if args.problem == "pq-del":
        g = fileio.read_graph(_read(args.input))
        opt = oracles.brute_pq_vertex_deletion(g, args.q, args.kmax)
    elif args.problem == FAST:
        t = fileio.read_tournament(_read(args.input))
        opt = oracles.brute_fas_optimum(t)
    else:
        g = fileio.read_graph(_read(args.input))
        family = "triangle" if args.problem == TRIANGLE_DEL else "p3"
        opt = oracles.brute_edit_optimum(g, family, args.kmax)
    print(f"optimum {opt}")
    return EXIT_SOLVED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="packedit",
        description="Exact graph-modification solvers above packing lower bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    problems = [TRIANGLE_DEL, FAST, CLUSTER_EDIT]

    p_solve = sub.add_parser("solve", help="solve an instance")
    p_solve.add_argument("--problem", required=True, choices=problems)
    p_solve.add_argument("--input", required=True)
    p_solve.add_argument("--packing")
    p_solve.add_argument("--auto-pack", action="store_true")
    p_solve.add_argument("--t", type=int, default=1)
    p_solve.add_argument("--k", type=int)
    p_solve.add_argument("--optimize", action="store_true")
    p_solve.add_argument("--engine", default="above-packing",
                         choices=["above-packing", "plain", "oracle"])
    p_solve.add_argument("--emit-edits")
    p_solve.add_argument("--stats")
    p_solve.set_defaults(func=cmd_solve)

    p_reduce = sub.add_parser("reduce", help="exhaust the reduction rules")
    p_reduce.add_argument("--problem", required=True, choices=problems)
    p_reduce.add_argument("--input", required=True)
    p_reduce.add_argument("--packing")
    p_reduce.add_argument("--auto-pack", action="store_true")
    p_reduce.add_argument("--t", type=int, default=1)
    p_reduce.add_argument("--k", type=int, required=True)
    p_reduce.add_argument("--out", required=True)
    p_reduce.set_defaults(func=cmd_reduce)

    p_pack = sub.add_parser("pack", help="greedy packing and bounds report")
    p_pack.add_argument("--problem", required=True, choices=problems)
    p_pack.add_argument("--input", required=True)
    p_pack.add_argument("--t", type=int, default=1)
    p_pack.add_argument("--k", type=int)
    p_pack.add_argument("--out")
    p_pack.set_defaults(func=cmd_pack)

    p_gen = sub.add_parser("gen", help="generate instances")
    gen_sub = p_gen.add_subparsers(dest="generator", required=True)
    for name in ("cons1", "cons2", "cons3"):
        p = gen_sub.add_parser(name)
        p.add_argument("--cnf", required=True)
        p.add_argument("--out", required=True)
        if name != "cons1":
            p.add_argument("--q", type=int, required=True)
        p.set_defaults(func=cmd_gen)
    p_rand = gen_sub.add_parser("random")
    p_rand.add_argument("--kind", choices=["graph", "tournament"], default="graph")
    p_rand.add_argument("--n", type=int, required=True)
    p_rand.add_argument("--seed", type=int, required=True)
    p_rand.add_argument("--p", type=float, default=0.5)
    p_rand.add_argument("--out", required=True)
    p_rand.set_defaults(func=cmd_gen)
    p_plant = gen_sub.add_parser("planted")
    p_plant.add_argument("--sizes", required=True, help="comma-separated clique sizes")
    p_plant.add_argument("--flips", type=int, default=0)
    p_plant.add_argument("--seed", type=int, required=True)
    p_plant.add_argument("--out", required=True)
    p_plant.set_defaults(func=cmd_gen)

    p_verify = sub.add_parser("verify", help="check an edit set against an instance")
    p_verify.add_argument("--problem", required=True, choices=problems)
    p_verify.add_argument("--input", required=True)
    p_verify.add_argument("--edits", required=True)
    p_verify.add_argument("--k", type=int)
    p_verify.add_argument("--packing")
    p_verify.add_argument("--t", type=int, default=1)
    p_verify.set_defaults(func=cmd_verify)

    p_oracle = sub.add_parser("oracle", help="run the brute-force engines")
    p_oracle.add_argument("--problem", required=True,
                          choices=problems + ["pq-del"])
    p_oracle.add_argument("--input", required=True)
    p_oracle.add_argument("--kmax", type=int, default=6)
    p_oracle.add_argument("--q", type=int, default=3)
    p_oracle.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Exceeded, SizeCapError) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputFormatError, MalformedFormula, QTooSmall, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
