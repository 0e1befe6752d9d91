"""Command-line front door: generators in, analyses out, documents on stdio.

Generators emit poset documents; analyzers read one document from a file or
stdin, so everything composes through pipes:

    posetlab gen diamond 2 | posetlab grundy
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Optional

from . import __version__
from .constructions import flip, threshold
from .documents import (
    digraph_to_doc,
    graph_from_doc,
    poset_from_doc,
    poset_to_doc,
    qbf_from_doc,
)
from .errors import NotNFree, PosetLabError
from .impartial import SolveBudget, analyze, gset
from .nfree import decompose
from .partisan import Arena, best_move_bw, from_bw_poset
from .poset import BLACK, WHITE, Poset, generate
from .reductions import (
    Digraph,
    SimpleGraph,
    kayles_to_poset,
    ord_to_nim4,
    reach_to_game,
    tqbf_to_bwposet,
)


def _read_doc(path: Optional[str]) -> dict:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


def _read_poset(args) -> Poset:
    return poset_from_doc(_read_doc(getattr(args, "input", None)))


def _budget(args) -> SolveBudget:
    return SolveBudget(
        max_positions=args.budget_positions, max_millis=args.budget_ms
    )


def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, indent=None, sort_keys=True))
    else:
        print(human)


def _print_doc(doc: dict):
    print(json.dumps(doc))


def cmd_gen(args) -> int:
    params = []
    for chunk in args.params:
        params.extend(int(x) for x in chunk.split(",") if x.strip() != "")
    _print_doc(poset_to_doc(generate(args.family, *params)))
    return 0


def cmd_solve(args) -> int:
    poset = _read_poset(args)
    budget = _budget(args)
    if poset.is_colored:
        arena = Arena(budget)
        game = from_bw_poset(poset, arena)
        klass = arena.outcome_class(game)
        value = arena.value(game) if arena.is_numeric(game) else None
        moves = {
            color: best_move_bw(poset, color, arena) for color in (BLACK, WHITE)
        }
        payload = {
            "kind": "black-white",
            "outcome_class": klass.value,
            "value": None if value is None else str(value),
            "best_black": moves[BLACK][0].label if moves[BLACK] else None,
            "best_white": moves[WHITE][0].label if moves[WHITE] else None,
        }
        human = f"outcome class {klass.value}, value {value}"
        _emit(args, payload, human)
        return 0
    report = analyze(poset, budget)
    payload = {
        "kind": "impartial",
        "outcome": report.outcome.value,
        "grundy": report.grundy,
        "winning_moves": [p.label for p in report.winning_moves],
    }
    human = (
        f"{'first' if report.grundy else 'second'} player wins "
        f"(g = {report.grundy}; winning moves: "
        f"{', '.join(p.label for p in report.winning_moves) or 'none'})"
    )
    _emit(args, payload, human)
    return 0


def cmd_grundy(args) -> int:
    report = analyze(_read_poset(args), _budget(args))
    _emit(args, {"grundy": report.grundy}, str(report.grundy))
    return 0


def cmd_gset(args) -> int:
    values = sorted(gset(_read_poset(args), _budget(args)))
    _emit(args, {"gset": values}, "{%s}" % ", ".join(map(str, values)))
    return 0


def cmd_moves(args) -> int:
    report = analyze(_read_poset(args), _budget(args))
    labels = [p.label for p in report.winning_moves]
    _emit(args, {"winning_moves": labels}, ", ".join(labels) or "none")
    return 0


def cmd_value(args) -> int:
    poset = _read_poset(args)
    arena = Arena(_budget(args))
    value = arena.value(from_bw_poset(poset, arena))
    _emit(args, {"value": str(value), "value_float": float(value)}, str(value))
    return 0


def cmd_outcome_class(args) -> int:
    poset = _read_poset(args)
    arena = Arena(_budget(args))
    klass = arena.outcome_class(from_bw_poset(poset, arena))
    _emit(args, {"outcome_class": klass.value}, klass.value)
    return 0


def cmd_bestmove(args) -> int:
    poset = _read_poset(args)
    found = best_move_bw(poset, args.color, Arena(_budget(args)))
    if found is None:
        _emit(args, {"move": None}, "no winning move")
    else:
        _emit(
            args,
            {"move": found[0].label, "outcome_after": found[1].value},
            found[0].label,
        )
    return 0


def cmd_decompose(args) -> int:
    poset = _read_poset(args)
    try:
        tree = decompose(poset)
    except NotNFree as exc:
        witness = [p.label for p in exc.witness] if exc.witness else []
        if args.json:
            print(json.dumps({"error": {"code": exc.code, "witness": witness}}))
        else:
            print(f"not N-free; witness: {', '.join(witness)}", file=sys.stderr)
        return 1
    _emit(args, {"sptree": tree.to_text()}, tree.to_text())
    return 0


def cmd_flip(args) -> int:
    _print_doc(poset_to_doc(flip(_read_poset(args))))
    return 0


def cmd_threshold(args) -> int:
    _print_doc(poset_to_doc(threshold(_read_poset(args), args.t)))
    return 0


def cmd_reduce(args) -> int:
    doc = _read_doc(args.input)
    if args.gadget == "kayles":
        graph = graph_from_doc(doc)
        if not isinstance(graph, SimpleGraph):
            raise PosetLabError("kayles reduction needs an undirected graph")
        _print_doc(poset_to_doc(kayles_to_poset(graph)))
        return 0
    if args.gadget == "tqbf":
        poset, report = tqbf_to_bwposet(qbf_from_doc(doc))
        out = {"poset": poset_to_doc(poset)}
        if args.report:
            out["report"] = {
                "non_waiting_nodes": report.non_waiting_nodes,
                "waiting_counts": list(report.waiting_counts),
                "inventory": report.inventory,
                "total_points": report.total_points,
            }
        _print_doc(out)
        return 0
    graph = graph_from_doc(doc)
    if not isinstance(graph, Digraph):
        raise PosetLabError(f"{args.gadget} reduction needs a directed graph")
    s, t = doc.get("s"), doc.get("t")
    if s is None or t is None:
        raise PosetLabError("graph document needs 's' and 't' vertices")
    out_graph = reach_to_game(graph, s, t) if args.gadget == "reach" else ord_to_nim4(graph, s, t)
    _print_doc(digraph_to_doc(out_graph))
    return 0


def cmd_serve(args) -> int:
    from .service import ServiceConfig, serve

    config = ServiceConfig(default_budget=_budget(args))
    try:
        serve(port=args.port, host=args.host, config=config)
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args) -> int:
    from .sampling import random_poset_capped

    rng = random.Random(args.seed)
    rows = []
    for n in (8, 10, 12, 14):
        poset = random_poset_capped(rng, n, 200_000)
        start = time.monotonic()
        report = analyze(poset, _budget(args))
        rows.append(
            (n, report.grundy, report.positions_explored, time.monotonic() - start)
        )
    if args.json:
        print(
            json.dumps(
                [
                    {"points": n, "grundy": g, "positions": p, "seconds": round(s, 4)}
                    for n, g, p, s in rows
                ]
            )
        )
    else:
        print("points  grundy  positions  seconds")
        for n, g, p, s in rows:
            print(f"{n:6d}  {g:6d}  {p:9d}  {s:7.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetlab", description="poset game solvers and gadget generators"
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget-positions", type=int, default=10_000_000)
    common.add_argument("--budget-ms", type=int, default=30_000)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized helpers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="emit a family poset document")
    p.add_argument("family")
    p.add_argument("params", nargs="*", help="integer parameters (commas allowed)")
    p.set_defaults(fn=cmd_gen)

    for name, fn, extra in (
        ("solve", cmd_solve, None),
        ("grundy", cmd_grundy, None),
        ("gset", cmd_gset, None),
        ("moves", cmd_moves, None),
        ("value", cmd_value, None),
        ("outcome-class", cmd_outcome_class, None),
        ("decompose", cmd_decompose, None),
        ("flip", cmd_flip, None),
    ):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("input", nargs="?", help="poset document (default stdin)")
        p.set_defaults(fn=fn)

    p = sub.add_parser("bestmove", parents=[common])
    p.add_argument("input", nargs="?")
    p.add_argument("--color", choices=[BLACK, WHITE], required=True)
    p.set_defaults(fn=cmd_bestmove)

    p = sub.add_parser("threshold", parents=[common])
    p.add_argument("input", nargs="?")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(fn=cmd_threshold)

    p = sub.add_parser("reduce", parents=[common])
    p.add_argument("gadget", choices=["kayles", "tqbf", "reach", "ord"])
    p.add_argument("input", nargs="?")
    p.add_argument("--report", action="store_true", help="include the tqbf structure report")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("serve", parents=[common])
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("bench", parents=[common])
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PosetLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: input is not valid JSON: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
