"""Stateless HTTP facade over the solvers and generators.

Every request carries the full position; nothing is stored between calls, so
identical requests get identical bodies and concurrent handling is safe.
Budget misses map to 408, validation and cap misses to 422.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .constructions import flip as flip_poset
from .constructions import threshold as threshold_poset
from .documents import (
    digraph_to_doc,
    graph_from_doc,
    poset_digest,
    poset_from_doc,
    poset_to_doc,
    qbf_from_doc,
)
from .errors import (
    BadParams,
    BudgetExceeded,
    IllegalMove,
    InvalidDocument,
    PosetLabError,
    UnknownPoint,
)
from .impartial import SolveBudget, analyze
from .partisan import Arena, best_move_bw, from_bw_poset
from .poset import BLACK, WHITE, Poset, generate, play
from .reductions import Digraph, SimpleGraph, kayles_to_poset, ord_to_nim4, reach_to_game, tqbf_to_bwposet


@dataclass(frozen=True)
class ServiceConfig:
    impartial_cap: int = 64  # bitset-keyed exact search
    partisan_cap: int = 200  # exact partisan solves
    generated_cap: int = 10_000  # points in generated/reduced documents
    default_budget: SolveBudget = SolveBudget()


def _budget_from(body: dict, config: ServiceConfig) -> SolveBudget:
    raw = body.get("budget") or {}
    if not isinstance(raw, dict):
        raise InvalidDocument("budget must be an object")
    return SolveBudget(
        max_positions=raw.get("max_positions", config.default_budget.max_positions),
        max_millis=raw.get("max_millis", config.default_budget.max_millis),
    )


def _check_cap(poset: Poset, config: ServiceConfig):
    cap = config.partisan_cap if poset.is_colored else config.impartial_cap
    if poset.n > cap:
        kind = "black-white" if poset.is_colored else "impartial"
        raise BadParams(
            f"poset has {poset.n} points; the {kind} solve cap is {cap}"
        )


def _solve_payload(poset: Poset, budget: SolveBudget) -> dict:
    digest = poset_digest(poset)
    if not poset.is_colored:
        report = analyze(poset, budget)
        return {
            "kind": "impartial",
            "digest": digest,
            "outcome": report.outcome.value,
            "grundy": report.grundy,
            "winning_moves": [p.label for p in report.winning_moves],
            "gset": sorted(report.gset),
            "method": report.method,
            "positions_explored": report.positions_explored,
            "elapsed_millis": report.elapsed_millis,
        }
    start = time.monotonic()
    arena = Arena(budget)
    game = from_bw_poset(poset, arena)
    klass = arena.outcome_class(game)
    value = arena.value(game) if arena.is_numeric(game) else None
    best = {}
    for color in (BLACK, WHITE):
        move = best_move_bw(poset, color, arena)
        best[color] = None if move is None else move[0].label
    return {
        "kind": "black-white",
        "digest": digest,
        "outcome_class": klass.value,
        "value": None if value is None else str(value),
        "value_float": None if value is None else float(value),
        "best_black": best[BLACK],
        "best_white": best[WHITE],
        "positions_explored": arena.work_units,
        "elapsed_millis": int((time.monotonic() - start) * 1000),
    }


def _mover_points(poset: Poset, to_move: str) -> list[str]:
    if poset.is_colored:
        if to_move not in (BLACK, WHITE):
            raise IllegalMove("toMove must be 'black' or 'white' on colored posets")
        return [
            lab
            for i, lab in enumerate(poset.labels)
            if poset.colors[i] == to_move
        ]
    return list(poset.labels)


def _winning_after(poset: Poset, after: Poset, to_move: str, budget: SolveBudget) -> bool:
    """Did the mover just move into a position they win from?"""
    if not poset.is_colored:
        from .impartial import ImpartialOutcome, outcome

        return outcome(after, budget).outcome is ImpartialOutcome.FORALL
    arena = Arena(budget)
    game = from_bw_poset(after, arena)
    return arena.ge_zero(game) if to_move == BLACK else arena.le_zero(game)


def create_app(config: ServiceConfig = ServiceConfig()) -> FastAPI:
    app = FastAPI(title="posetlab", version=__version__)

    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],  # the playground is served from another port
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(PosetLabError)
    async def domain_error(_request: Request, exc: PosetLabError):
        status = 408 if isinstance(exc, BudgetExceeded) else 422
        body = {"error": {"code": exc.code, "message": str(exc)}}
        if isinstance(exc, BudgetExceeded):
            body["error"]["positions_explored"] = exc.positions_explored
        return JSONResponse(status_code=status, content=body)

    @app.get("/v1/health")
    async def health():
        return {"status": "ok", "service": "posetlab", "version": __version__}

    @app.get("/v1/generate")
    async def generate_poset(family: str, params: str = ""):
        values = [int(x) for x in params.split(",") if x.strip() != ""]
        poset = generate(family, *values)
        if poset.n > config.generated_cap:
            raise BadParams(
                f"generated poset has {poset.n} points; cap is {config.generated_cap}"
            )
        return poset_to_doc(poset)

    @app.post("/v1/solve")
    async def solve(body: dict):
        poset = poset_from_doc(body.get("poset", body))
        _check_cap(poset, config)
        return _solve_payload(poset, _budget_from(body, config))

    @app.post("/v1/bestmove")
    async def bestmove(body: dict):
        poset = poset_from_doc(body["poset"]) if "poset" in body else poset_from_doc(body)
        _check_cap(poset, config)
        budget = _budget_from(body, config)
        to_move = body.get("toMove", BLACK if poset.is_colored else "either")
        legal = _mover_points(poset, to_move)
        winning = None
        outcome_after = None
        if poset.is_colored:
            arena = Arena(budget)
            found = best_move_bw(poset, to_move, arena)
            if found is not None:
                winning = found[0].label
                outcome_after = found[1].value
        else:
            report = analyze(poset, budget)
            if report.winning_moves:
                winning = report.winning_moves[0].label
                outcome_after = "forall"
        return {
            "digest": poset_digest(poset),
            "toMove": to_move,
            "move": winning,
            "outcome_after": outcome_after,
            "any_move": winning if winning is not None else (legal[0] if legal else None),
        }

    @app.post("/v1/whatif")
    async def whatif(body: dict):
        poset = poset_from_doc(body["poset"])
        _check_cap(poset, config)
        budget = _budget_from(body, config)
        move = body.get("move")
        to_move = body.get("toMove", BLACK if poset.is_colored else "either")
        try:
            point = poset.point(move)
        except UnknownPoint as exc:
            raise IllegalMove(f"move {move!r} is not on the board") from exc
        if poset.is_colored and poset.color_of(point) != to_move:
            raise IllegalMove(
                f"point {move!r} is {poset.color_of(point)}; {to_move} may not play it"
            )
        after = play(poset, point)
        return {
            "digest": poset_digest(poset),
            "move": point.label,
            "toMove": to_move,
            "winning_for_mover": _winning_after(poset, after, to_move, budget),
            "resulting": _solve_payload(after, budget),
        }

    @app.post("/v1/reduce/kayles")
    async def reduce_kayles(body: dict):
        graph = graph_from_doc(body.get("graph", body))
        if not isinstance(graph, SimpleGraph):
            raise InvalidDocument("kayles needs an undirected graph")
        poset = kayles_to_poset(graph)
        if poset.n > config.generated_cap:
            raise BadParams("reduced poset exceeds the generated-size cap")
        return {"poset": poset_to_doc(poset)}

    @app.post("/v1/reduce/reach")
    async def reduce_reach(body: dict):
        doc = body.get("graph", body)
        graph = graph_from_doc(doc)
        if not isinstance(graph, Digraph):
            raise InvalidDocument("reach needs a directed graph")
        if "s" not in doc or "t" not in doc:
            raise InvalidDocument("reach needs 's' and 't' vertices in the graph document")
        out = reach_to_game(graph, doc["s"], doc["t"])
        labels = [f"v{i}" for i in range(out.n)]
        return {
            "graph": digraph_to_doc(out),
            "poset": {
                "format": "posetlab-v1",
                "repr": "AR",
                "points": [{"id": lab} for lab in labels],
                "edges": [[f"v{u}", f"v{v}"] for u, v in out.edges],
            },
        }

    @app.post("/v1/reduce/ord")
    async def reduce_ord(body: dict):
        doc = body.get("graph", body)
        graph = graph_from_doc(doc)
        if not isinstance(graph, Digraph):
            raise InvalidDocument("ord needs a directed graph (a single path)")
        if "s" not in doc or "t" not in doc:
            raise InvalidDocument("ord reads x from 's' and y from 't' in the graph document")
        out = ord_to_nim4(graph, doc["s"], doc["t"])
        labels = [f"v{i}" for i in range(out.n)]
        return {
            "graph": digraph_to_doc(out),
            "poset": {
                "format": "posetlab-v1",
                "repr": "HD",
                "points": [{"id": lab} for lab in labels],
                "edges": [[f"v{u}", f"v{v}"] for u, v in out.edges],
            },
        }

    @app.post("/v1/reduce/tqbf")
    async def reduce_tqbf(body: dict):
        inst = qbf_from_doc(body.get("qbf", body))
        if inst.num_vars > 15 or len(inst.clauses) > 64:
            raise BadParams("tqbf reduction capped at 15 variables and 64 clauses")
        poset, report = tqbf_to_bwposet(inst)
        if poset.n > config.generated_cap:
            raise BadParams("reduced poset exceeds the generated-size cap")
        return {
            "poset": poset_to_doc(poset),
            "report": {
                "num_vars": report.num_vars,
                "num_clauses": report.num_clauses,
                "non_waiting_nodes": report.non_waiting_nodes,
                "waiting_counts": list(report.waiting_counts),
                "inventory": report.inventory,
                "total_points": report.total_points,
            },
        }

    @app.post("/v1/flip")
    async def flip_endpoint(body: dict):
        poset = poset_from_doc(body.get("poset", body))
        return {"poset": poset_to_doc(flip_poset(poset))}

    @app.post("/v1/threshold")
    async def threshold_endpoint(body: dict):
        poset = poset_from_doc(body["poset"])
        return {"poset": poset_to_doc(threshold_poset(poset, body.get("t", 1)))}

    return app


def serve(port: int = 8080, host: str = "127.0.0.1", config: ServiceConfig = ServiceConfig()):
    """Run the service; raises on a busy port rather than retrying."""
    import uvicorn

    uvicorn.run(create_app(config), host=host, port=port, log_level="warning")
