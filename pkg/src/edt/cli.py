"""Command line front end: ``edt compute|sweep|play|gen``.

Exit codes: 0 success, 1 counterexample found, 2 parse error,
3 solver budget exceeded, 4 no winning family at the requested size.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any, TextIO

from .characterize import classify
from .game import (
    BudgetExceeded,
    IllegalAttack,
    Model,
    all_guards_move_legal,
    defend,
    eternal_numbers,
    is_dominating,
    smallest_winning_k,
    solve,
)
from .graph import Graph, GraphError, enumerate_trees, random_tree, read_graph, validate_tree
from .invariants import SizeLimitExceeded, brute_connected_domination_number, domination_number, independence_number
from .neocolon import MAX_ORACLE_N, theta_c_oracle
from .sweep import CHECKS, MAX_SWEEP_N, sweep

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_PARSE, EXIT_BUDGET, EXIT_INFEASIBLE = 0, 1, 2, 3, 4


def dump_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _load(path: str) -> Graph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise GraphError(f"cannot read {path}: {exc.strerror}") from exc


def graph_report(g: Graph, use_solver: bool = True) -> dict[str, Any]:
    """Report for a graph that is not a tree; the tree-only checks are marked not applicable."""
    game = None
    status = "skipped"
    if use_solver:
        try:
            nums = eternal_numbers(g)
            game = {"gamma_inf": nums.gamma_inf, "gamma_m_inf": nums.gamma_m_inf}
            status = "solved"
        except BudgetExceeded:
            status = "unverified"
    connected = g.is_connected()
    try:
        gamma_c = brute_connected_domination_number(g) if connected else None
    except SizeLimitExceeded:
        gamma_c = None
    return {
        "graph": {"n": g.n, "edges": [list(e) for e in g.sorted_edges()], "tree": False, "connected": connected},
        "invariants": {
            "gamma": domination_number(g),
            "gamma_c": gamma_c,
            "beta": independence_number(g),
            "half_ceil": (g.n + 1) // 2,
        },
        "theta_c": theta_c_oracle(g) if connected and g.n <= MAX_ORACLE_N else None,
        "game": {
            "status": status,
            "gamma_inf": game["gamma_inf"] if game else None,
            "gamma_m_inf": game["gamma_m_inf"] if game else None,
        },
        "gamma_m_inf": game["gamma_m_inf"] if game else None,
        "checks": "not-applicable",
    }


def _summary(rep: dict[str, Any]) -> str:
    inv = rep["invariants"]
    lines = [
        f"n={rep['graph']['n']}  tree={rep['graph']['tree']}",
        f"gamma={inv['gamma']}  gamma_c={inv['gamma_c']}  beta={inv['beta']}  ceil(n/2)={inv['half_ceil']}",
        f"theta_c={rep['theta_c']}  gamma_m_inf={rep['gamma_m_inf']}  gamma_inf={rep['game']['gamma_inf']}"
        f"  (solver: {rep['game']['status']})",
    ]
    if isinstance(rep["checks"], dict):
        for name, eq in rep["equalities"].items():
            lines.append(f"  gamma_m = {name:<9} {eq}")
        for name, c in rep["checks"].items():
            lines.append(f"  check {name:<9} equality={c['equality']!s:<5} structural={c['structural']!s:<5} agree={c['agree']}")
    else:
        lines.append("tree checks: not applicable")
    return "\n".join(lines)


def cmd_compute(args: argparse.Namespace, out: TextIO) -> int:
    g = _load(args.file)
    if g.is_tree():
        rep = classify(validate_tree(g), use_solver=not args.no_solver).to_dict()
    else:
        print("note: not a tree, tree-only checks skipped", file=sys.stderr)
        rep = graph_report(g, use_solver=not args.no_solver)
    out.write((dump_json(rep) if args.json else _summary(rep)) + "\n")
    if rep["game"]["status"] == "unverified":
        print("error: game solver over budget; game numbers unverified (use --no-solver to skip)", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, out: TextIO) -> int:
    if not 2 <= args.max_n <= MAX_SWEEP_N:
        print(f"error: --max-n must be in 2..{MAX_SWEEP_N}", file=sys.stderr)
        return EXIT_PARSE
    try:
        res = sweep(args.max_n, args.check or ["all"], jobs=args.jobs)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_PARSE
    if args.json:
        out.write(
            dump_json(
                {
                    "n_range": [res.min_n, res.max_n],
                    "trees": res.trees,
                    "passed": res.passed,
                    "failed": res.failed,
                    "counterexamples": res.counterexamples,
                    "seconds": round(res.seconds, 3),
                }
            )
            + "\n"
        )
    else:
        out.write(res.table() + "\n")
    return EXIT_OK if res.ok else EXIT_COUNTEREXAMPLE


def _ask(prompt: str, inp: TextIO, out: TextIO) -> str | None:
    out.write(prompt)
    out.flush()
    line = inp.readline()
    return None if line == "" else line.strip()


def cmd_play(args: argparse.Namespace, out: TextIO, inp: TextIO | None = None) -> int:
    inp = inp or sys.stdin
    g = _load(args.file)
    fam = solve(g, Model.ALL, args.guards)
    if fam is None:
        best = smallest_winning_k(g, Model.ALL, start=args.guards)
        out.write(f"no winning family with {args.guards} guards; minimum is {best}\n")
        return EXIT_INFEASIBLE
    rng = random.Random(args.seed)
    cur = fam.initial()
    out.write(f"{len(fam)} winning configurations with {fam.k} guards\n")
    out.write(f"guards: {cur.vertices}\n")
    steps = 0
    while args.steps is None or steps < args.steps:
        free = [v for v in range(g.n) if v not in cur]
        if not free:
            out.write("every vertex is guarded; nothing to attack\n")
            break
        if args.attacker == "random":
            r = rng.choice(free)
        else:
            raw = _ask("attack vertex (q to quit): ", inp, out)
            if raw is None or raw.lower() in ("q", "quit", "exit"):
                break
            try:
                r = int(raw)
            except ValueError:
                out.write(f"not a vertex: {raw!r}\n")
                continue
        try:
            nxt = defend(fam, cur, r)
        except IllegalAttack as exc:
            out.write(f"{exc}; try again\n")
            continue
        if not (all_guards_move_legal(g, cur, nxt) and r in nxt and is_dominating(g, nxt)):
            raise AssertionError("defender response broke the rules")
        steps += 1
        if args.attacker != "random" or args.verbose:
            out.write(f"attack {r} -> guards: {nxt.vertices}\n")
        cur = nxt
    out.write(f"defended {steps} attacks\n")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    outdir = Path(args.out)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        if args.exhaustive:
            trees = list(enumerate_trees(args.n))
        else:
            base = random.Random(args.seed)
            trees = [random_tree(args.n, base.randrange(2**63)) for _ in range(args.random)]
        for i, t in enumerate(trees):
            (outdir / f"tree_n{args.n}_{i:04d}.el").write_text(t.to_edge_list(), encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot write to {outdir}: {exc.strerror}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    out.write(f"wrote {len(trees)} files to {outdir}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="parameters and characterization checks for one graph")
    c.add_argument("file")
    c.add_argument("--no-solver", action="store_true", help="skip the game solver")
    c.add_argument("--json", action="store_true", help="emit the full JSON report")

    s = sub.add_parser("sweep", help="run the structural checks over all trees up to --max-n")
    s.add_argument("--max-n", type=int, default=9)
    s.add_argument("--check", action="append", help=f"all, or one of: {', '.join(CHECKS)}")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", action="store_true")

    pl = sub.add_parser("play", help="play the attacker against the computed defender strategy")
    pl.add_argument("file")
    pl.add_argument("--guards", type=int, required=True)
    pl.add_argument("--attacker", choices=["human", "random"], default="human")
    pl.add_argument("--steps", type=int)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--verbose", action="store_true")

    gn = sub.add_parser("gen", help="write trees as edge-list files")
    gn.add_argument("--n", type=int, required=True)
    mode = gn.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", type=int, metavar="COUNT")
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--out", required=True)
    return p


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    handlers = {"compute": cmd_compute, "sweep": cmd_sweep, "play": cmd_play, "gen": cmd_gen}
    try:
        return handlers[args.command](args, out)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
