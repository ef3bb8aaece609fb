"""Command-line front door.

Subcommands: ``onh`` (print the labeled hypergraph and special marking),
``play`` (one greedy game as a trace), ``solve`` (exact minimax lengths),
``verify`` (bounds and trace checks for one graph), and ``sweep``
(exhaustive or randomized batches).  Exit codes: 0 success, 1 a verification
assertion failed, 2 input or usage problems.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import fastplay, verifier
from .engine import DOMINATOR, STALLER, Trace
from .errors import TdgameError
from .graph import Graph, build_onh, parse_graph, validate_min_component_order
from .hypergraph import render_hypergraph, select_special_vertices
from .potential import WeightScheme
from .strategies import (
    DEFAULT_SOLVE_EDGE_LIMIT,
    DEFAULT_WORST_EDGE_LIMIT,
    solve_exact_game,
    worst_staller_vs_greedy,
)


@dataclass(frozen=True)
class CliConfig:
    command: str
    graph_path: str | None
    first_player: str
    staller: str
    seed: int
    scheme: WeightScheme
    solve_limit: int
    worst_limit: int
    json_output: bool


def _scheme_from_args(args: argparse.Namespace) -> WeightScheme:
    return WeightScheme(
        vertex_nonspecial=args.w_vertex,
        vertex_special=args.w_special_vertex,
        edge_nonspecial=args.w_edge,
        edge_special=args.w_special_edge,
        component_discount=args.w_discount,
    )


def _add_scheme_flags(parser: argparse.ArgumentParser) -> None:
    defaults = WeightScheme()
    parser.add_argument("--w-vertex", type=int, default=defaults.vertex_nonspecial)
    parser.add_argument(
        "--w-special-vertex", type=int, default=defaults.vertex_special
    )
    parser.add_argument("--w-edge", type=int, default=defaults.edge_nonspecial)
    parser.add_argument(
        "--w-special-edge", type=int, default=defaults.edge_special
    )
    parser.add_argument(
        "--w-discount", type=int, default=defaults.component_discount
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdgame",
        description="Total domination game engine, solvers, and verifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_onh = sub.add_parser("onh", help="print the open neighborhood hypergraph")
    p_onh.add_argument("graph")

    p_play = sub.add_parser("play", help="play one greedy game and print the trace")
    p_play.add_argument("graph")
    p_play.add_argument(
        "--first", choices=[DOMINATOR, STALLER], default=DOMINATOR
    )
    p_play.add_argument(
        "--staller", choices=["worst", "myopic", "random"], default="worst"
    )
    p_play.add_argument("--seed", type=int, default=0)
    p_play.add_argument("--worst-limit", type=int, default=DEFAULT_WORST_EDGE_LIMIT)
    p_play.add_argument("--json", action="store_true")
    _add_scheme_flags(p_play)

    p_solve = sub.add_parser("solve", help="exact minimax game lengths")
    p_solve.add_argument("graph")
    p_solve.add_argument(
        "--first", choices=[DOMINATOR, STALLER, "both"], default=DOMINATOR
    )
    p_solve.add_argument("--solve-limit", type=int, default=DEFAULT_SOLVE_EDGE_LIMIT)
    p_solve.add_argument("--json", action="store_true")

    p_verify = sub.add_parser("verify", help="bounds and trace checks for one graph")
    p_verify.add_argument("graph")
    p_verify.add_argument("--solve-limit", type=int, default=DEFAULT_SOLVE_EDGE_LIMIT)
    p_verify.add_argument("--worst-limit", type=int, default=DEFAULT_WORST_EDGE_LIMIT)
    p_verify.add_argument("--json", action="store_true")
    _add_scheme_flags(p_verify)

    p_sweep = sub.add_parser("sweep", help="exhaustive or randomized check batches")
    mode = p_sweep.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", action="store_true")
    p_sweep.add_argument("--max-n", type=int, default=6)
    p_sweep.add_argument("--count", type=int, default=10)
    p_sweep.add_argument("--n", type=int, default=12)
    p_sweep.add_argument("--p", type=float, default=0.25)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument(
        "--staller", choices=["worst", "myopic", "random"], default="worst"
    )
    p_sweep.add_argument("--worst-limit", type=int, default=DEFAULT_WORST_EDGE_LIMIT)
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--json", action="store_true")
    _add_scheme_flags(p_sweep)
    return parser


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as handle:
        g = parse_graph(handle.read())
    validate_min_component_order(g)
    return g


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _trace_payload(trace: Trace, scheme: WeightScheme) -> dict:
    payload = trace.to_json_dict()
    if not scheme.is_default:
        payload["default_scheme"] = False
        payload["scheme"] = scheme.to_json_dict()
    return payload


def _print_trace(trace: Trace, scheme: WeightScheme) -> None:
    print(
        f"n={trace.num_vertices} f0={trace.f0} length={trace.length} "
        f"first={trace.first_player}"
    )
    if not scheme.is_default:
        print("weights: custom (non-default scheme; guarantees not asserted)")
    print(f"{'i':>3} {'player':<10} {'vertex':>6} {'d':>5} {'deg':>4} "
          f"{'iso':>4} {'f':>6} {'phase':>5}")
    for r in trace.turns:
        print(
            f"{r.index:>3} {r.player:<10} {r.vertex:>6} {r.decrease:>5} "
            f"{r.delta_before:>4} {str(r.isolated_edge_move):>4} "
            f"{r.f_after:>6} {r.phase:>5}"
        )


def _cmd_onh(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    h = build_onh(g)
    marking = select_special_vertices(h)
    print(render_hypergraph(h, marking))
    return 0


def _cmd_play(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    scheme = _scheme_from_args(args)
    h = build_onh(g)
    marking = select_special_vertices(h)
    if args.staller == "worst":
        trace = worst_staller_vs_greedy(
            h, marking, scheme, args.first, edge_limit=args.worst_limit
        )
    else:
        trace = fastplay.play(
            h,
            marking,
            scheme,
            first_player=args.first,
            staller=args.staller,
            rng=random.Random(args.seed),
        )
    if args.json:
        _emit_json(_trace_payload(trace, scheme))
    else:
        _print_trace(trace, scheme)
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    h = build_onh(g)
    marking = select_special_vertices(h)
    firsts = [DOMINATOR, STALLER] if args.first == "both" else [args.first]
    results = {
        first: solve_exact_game(h, marking, first, edge_limit=args.solve_limit)
        for first in firsts
    }
    if args.json:
        _emit_json(
            {first.replace("-", "_"): res.to_json_dict() for first, res in results.items()}
        )
    else:
        for first, res in results.items():
            moves = " ".join(str(v) for v in res.best_first_moves)
            print(
                f"{first}-start: length={res.value} best-first-moves=[{moves}] "
                f"explored-states={res.explored_states}"
            )
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    scheme = _scheme_from_args(args)
    report = verifier.verify_graph(
        g, scheme, solve_limit=args.solve_limit, worst_limit=args.worst_limit
    )
    if args.json:
        _emit_json(report.to_json_dict())
    else:
        print(report.render_text())
    return 0 if report.ok else 1


def _cmd_sweep(args: argparse.Namespace) -> int:
    scheme = _scheme_from_args(args)
    if args.exhaustive:
        report = verifier.sweep_exhaustive(args.max_n, scheme, jobs=args.jobs)
    else:
        report = verifier.sweep_random(
            args.count,
            args.n,
            args.p,
            args.seed,
            staller=args.staller,
            scheme=scheme,
            worst_limit=args.worst_limit,
            jobs=args.jobs,
        )
    if args.json:
        _emit_json(report.to_json_dict())
    else:
        print(report.render_text())
    return 0 if report.ok else 1


_HANDLERS = {
    "onh": _cmd_onh,
    "play": _cmd_play,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TdgameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_entry() -> None:  # pragma: no cover
    raise SystemExit(main())


if __name__ == "__main__":  # pragma: no cover
    console_entry()
