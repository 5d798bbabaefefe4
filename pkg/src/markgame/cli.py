"""Single entry-point command: generation, matches, solving, validation,
bounds, export, tournaments, and the play service.

Subcommands read the canonical graph JSON from ``--graph PATH`` or stdin
(``-`` or omitted), and write JSON artifacts to stdout so they compose in
pipes.  Every artifact echoes the config that produced it (seeds, budgets)
for byte-for-byte reproducibility; match summaries go to stderr.

Exit codes: 0 success, 1 usage error, 2 infeasible input or validation
failure, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from . import jsonio
from .engine import MatchAbort, play_match
from .graph import GraphError
from .lattices import LatticeError, add_centers, generate
from .scheme import validate_theorem_conditions
from .solver import bounds_report, default_budget, solve_colve
from .strategies import StrategyError, parse_strategy

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_BUDGET = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="markgame", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a lattice window")
    gen.add_argument("family", choices=["T", "R", "C", "H", "apollonian"])
    gen.add_argument("--rows", type=int, default=1)
    gen.add_argument("--cols", type=int, default=1)
    gen.add_argument("--insertions", type=int, default=0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument(
        "--add-centers",
        choices=["all", "gray", "triangular"],
        default=None,
        help="insert a vertex in the selected faces (T + all = T-prime)",
    )

    verify = sub.add_parser("verify", help="check the five marking conditions")
    verify.add_argument("--graph", default="-")

    play = sub.add_parser("play", help="run one match")
    play.add_argument("--graph", default="-")
    play.add_argument("--alice", required=True)
    play.add_argument("--bob", required=True)
    play.add_argument("--seed", type=int, default=None)
    play.add_argument("--rounds", type=int, default=None)

    solve = sub.add_parser("solve", help="exact col_ve")
    solve.add_argument("--graph", default="-")
    solve.add_argument("--budget", type=int, default=None)

    bounds = sub.add_parser("bounds", help="bracket col_ve")
    bounds.add_argument("--graph", default="-")
    bounds.add_argument("--subgraph", action="append", default=[])
    bounds.add_argument("--budget", type=int, default=None)

    export = sub.add_parser("export", help="export for visualization")
    export.add_argument("--graph", default="-")
    export.add_argument("--format", choices=["dot"], default="dot")

    tourney = sub.add_parser("tourney", help="seeded match series")
    tourney.add_argument("--graph", default="-")
    tourney.add_argument("--alice", required=True)
    tourney.add_argument("--bob", required=True)
    tourney.add_argument("--games", type=int, default=100)
    tourney.add_argument("--seed", type=int, default=0)
    tourney.add_argument("--rounds", type=int, default=None)
    tourney.add_argument("--jobs", type=int, default=4)

    serve = sub.add_parser("serve", help="start the live play service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    return p


def _read_graph(path: str):
    if path in ("-", "", None):
        return jsonio.graph_from_dict(json.load(sys.stdin))
    with open(path) as fp:
        return jsonio.load_graph(fp)


def _emit(doc: dict) -> None:
    sys.stdout.write(jsonio.dump_json(doc))


def _cmd_gen(args) -> int:
    params = (
        {"insertions": args.insertions, "seed": args.seed}
        if args.family == "apollonian"
        else {"rows": args.rows, "cols": args.cols}
    )
    bundle = generate(args.family, **params)
    if args.add_centers:
        bundle = add_centers(bundle, args.add_centers)
    config = {"command": "gen", "family": args.family, **params}
    if args.add_centers:
        config["add_centers"] = args.add_centers
    _emit(
        jsonio.graph_to_dict(
            bundle.graph,
            bundle.scheme,
            extra={"config": config, "family": bundle.family},
        )
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    graph, scheme = _read_graph(args.graph)
    if scheme is None:
        _emit({"config": {"command": "verify"}, "error": "graph carries no marking scheme"})
        return EXIT_INFEASIBLE
    report = validate_theorem_conditions(graph, scheme)
    _emit({"config": {"command": "verify"}, **report.to_dict()})
    return EXIT_OK if report.passed else EXIT_INFEASIBLE


def _cmd_play(args) -> int:
    graph, scheme = _read_graph(args.graph)
    seed = args.seed
    alice = parse_strategy(args.alice, graph, scheme, default_seed=seed)
    bob = parse_strategy(
        args.bob, graph, scheme, default_seed=None if seed is None else seed + 1
    )
    result = play_match(graph, alice, bob, round_cap=args.rounds)
    config = {
        "command": "play",
        "alice": alice.descriptor,
        "bob": bob.descriptor,
        "seed": seed,
        "rounds": args.rounds,
    }
    _emit({"config": config, **result.to_dict(graph_ref=args.graph)})
    sys.stderr.write(
        f"{alice.descriptor} vs {bob.descriptor}: final score {result.final_score} "
        f"after {len(result.trace)} rounds ({result.termination})\n"
    )
    return EXIT_OK


def _cmd_solve(args) -> int:
    graph, _ = _read_graph(args.graph)
    budget = args.budget if args.budget is not None else default_budget()
    result = solve_colve(graph, node_budget=budget)
    config = {"command": "solve", "budget": budget}
    _emit({"config": config, **result.to_dict()})
    return EXIT_OK if result.value is not None else EXIT_BUDGET


def _cmd_bounds(args) -> int:
    graph, _ = _read_graph(args.graph)
    subs = []
    for path in args.subgraph:
        sg, _ = _read_graph(path)
        subs.append(sg)
    budget = args.budget if args.budget is not None else default_budget()
    report = bounds_report(graph, tuple(subs), node_budget=budget)
    _emit({"config": {"command": "bounds", "budget": budget}, **report.to_dict()})
    return EXIT_OK


def _cmd_export(args) -> int:
    graph, scheme = _read_graph(args.graph)
    sys.stdout.write(jsonio.to_dot(graph, scheme))
    return EXIT_OK


def _cmd_tourney(args) -> int:
    graph, scheme = _read_graph(args.graph)

    def run(seed: int) -> int:
        alice = parse_strategy(args.alice, graph, scheme, default_seed=seed)
        bob = parse_strategy(args.bob, graph, scheme, default_seed=seed + 1)
        return play_match(graph, alice, bob, round_cap=args.rounds).final_score

    seeds = [args.seed + i for i in range(args.games)]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            scores = list(pool.map(run, seeds))
    else:
        scores = [run(s) for s in seeds]
    histogram: dict[str, int] = {}
    for s in scores:
        histogram[str(s)] = histogram.get(str(s), 0) + 1
    config = {
        "command": "tourney",
        "alice": args.alice,
        "bob": args.bob,
        "games": args.games,
        "seed": args.seed,
        "rounds": args.rounds,
    }
    _emit(
        {
            "config": config,
            "histogram": dict(sorted(histogram.items(), key=lambda kv: int(kv[0]))),
            "max_score": max(scores, default=0),
        }
    )
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


_HANDLERS = {
    "gen": _cmd_gen,
    "verify": _cmd_verify,
    "play": _cmd_play,
    "solve": _cmd_solve,
    "bounds": _cmd_bounds,
    "export": _cmd_export,
    "tourney": _cmd_tourney,
    "serve": _cmd_serve,
}


def run(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (GraphError, LatticeError, StrategyError, MatchAbort, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INFEASIBLE
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"bad input JSON: {exc}\n")
        return EXIT_INFEASIBLE


def main() -> None:  # console_scripts entry point
    sys.exit(run())


if __name__ == "__main__":
    main()
