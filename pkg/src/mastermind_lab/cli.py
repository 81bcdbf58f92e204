"""Command-line surface: batch runs, comparisons, instance generation,
record replay, a terminal advisor, and the HTTP service."""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .codes import CodeError, Response, is_legal_response, space_for
from .consistency import PlayedMove, filter_consistent, full_set
from .engine import record_from_dict, replay_check
from .experiments import (
    ExperimentConfig,
    RunSummary,
    compare,
    generate_instance_set,
    load_instances,
    run_experiment,
    save_instances,
)
from .strategies import (
    FIRST_MOVE_HALF,
    EmptyConsistentSetError,
    StrategyKind,
    first_move,
    next_move,
    strategy_from_name,
)

STRATEGY_NAMES = [k.value for k in StrategyKind]


def _summary_lines(summary: RunSummary) -> list[str]:
    lines = []
    for name, result in summary.strategies.items():
        lines.append(
            f"{name}: mean {result.mean_moves:.3f} ± {result.sem_moves:.3f}"
            f"  median {result.median_moves:g}  max {result.max_moves}"
            f"  total {result.total_moves}  games {result.n_games}"
        )
    for pair in summary.pairs:
        lines.append(
            f"{pair.strategy_a} vs {pair.strategy_b}: wilcoxon p = {pair.p_value:.4f}"
        )
    return lines


def cmd_run(args: argparse.Namespace) -> int:
    strategies = [strategy_from_name(name) for name in args.strategy]
    instances = None
    mode = args.mode
    if args.instances:
        instances = load_instances(args.instances)
        mode = "instances"
    elif mode is None:
        mode = "full"
    config = ExperimentConfig(
        kappa=args.kappa,
        ell=args.ell,
        strategies=strategies,
        first_move=args.first_move,
        mode=mode,
        reps=args.reps,
        instances=instances,
        seed=args.seed,
        max_moves=args.max_moves,
        deterministic=args.deterministic,
        workers=args.workers,
    )
    summary = run_experiment(config, out_dir=args.out_dir)
    for line in _summary_lines(summary):
        print(line)
    return 0


def cmd_gen_instances(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    instances = generate_instance_set(
        args.kappa, args.ell, args.size, rng, seed=args.seed
    )
    save_instances(args.out, instances)
    print(f"wrote {len(instances.codes)} instances to {args.out}")
    return 0


def _load_records(path: str, strategy: str | None):
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(record_from_dict(json.loads(line)))
    if strategy is not None:
        records = [r for r in records if r.strategy.value == strategy]
    if not records:
        raise ValueError(f"no records in {path}" + (f" for {strategy}" if strategy else ""))
    return records


def cmd_compare(args: argparse.Namespace) -> int:
    records_a = _load_records(args.a, args.strategy_a)
    records_b = _load_records(args.b, args.strategy_b)
    pair = compare(records_a, records_b)
    print(f"{pair.strategy_a} vs {pair.strategy_b}")
    print("move  count_diff  score_diff")
    for move in sorted(pair.count_diff):
        print(f"{move:4d}  {pair.count_diff[move]:10d}  {pair.score_diff[move]:10d}")
    print(f"wilcoxon p = {pair.p_value:.4f}")
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    records = _load_records(args.games, None)
    failures = 0
    for i, record in enumerate(records):
        result = replay_check(record)
        if not result:
            failures += 1
            print(
                f"record {i} (secret {record.secret}, {record.strategy}): "
                f"diverges at move {result.first_divergence}"
            )
    print(f"replayed {len(records)} records, {failures} divergent")
    return 0 if failures == 0 else 1


def _read_feedback(ell: int, prompt: str) -> tuple[int, int] | str:
    raw = input(prompt).strip().lower()
    if raw in ("q", "quit", "exit"):
        return "quit"
    if raw in ("u", "undo"):
        return "undo"
    parts = raw.replace("-", " ").split()
    if len(parts) != 2:
        print("  enter feedback as two numbers: black white (e.g. '2 1')")
        return "retry"
    try:
        black, white = int(parts[0]), int(parts[1])
    except ValueError:
        print("  enter feedback as two numbers: black white (e.g. '2 1')")
        return "retry"
    if not is_legal_response(black, white, ell):
        print(f"  impossible peg pair {black}-{white} for length {ell}, try again")
        return "retry"
    return black, white


def cmd_play(args: argparse.Namespace) -> int:
    kind = strategy_from_name(args.strategy)
    space = space_for(args.kappa, args.ell)
    rng = random.Random(args.seed)
    opening = first_move(args.kappa, args.ell, args.first_move)
    stack = [full_set(space)]
    suggestions = [opening]
    print(
        f"advisor: {args.kappa} colors, length {args.ell}, strategy {kind.value}. "
        "Answer with 'black white' pegs; 'undo' retracts, 'quit' exits."
    )
    while True:
        current = stack[-1]
        suggestion = suggestions[-1]
        print(f"[{len(current)} candidates] suggestion: {suggestion}")
        parsed = _read_feedback(space.ell, "feedback> ")
        if parsed == "quit":
            return 0
        if parsed == "retry":
            continue
        if parsed == "undo":
            if len(stack) == 1:
                print("  nothing to undo yet")
                continue
            stack.pop()
            suggestions.pop()
            continue
        black, white = parsed
        if black == space.ell:
            print(f"solved in {len(suggestions)} moves: {suggestion}")
            return 0
        move = PlayedMove(suggestion, Response(black, white))
        filtered = filter_consistent(current, move)
        if len(filtered) == 0:
            print("no consistent codes remain — check your pegs")
            parsed = input("undo last entry? [y/n] ").strip().lower()
            if parsed.startswith("y"):
                continue  # stack unchanged: the contradictory move was never pushed
            return 1
        stack.append(filtered)
        suggestions.append(next_move(filtered, kind, rng, args.deterministic))


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    static = args.static
    if static is None and Path("frontend/dist").is_dir():
        static = "frontend/dist"
    app = create_app(space_budget=args.space_budget, static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmlab",
        description="Mastermind strategy laboratory: benchmarks and live advisor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_dims(p, kappa=6, ell=4):
        p.add_argument("--kappa", type=int, default=kappa, help="number of colors")
        p.add_argument("--ell", type=int, default=ell, help="code length")

    run_p = sub.add_parser("run", help="play a batch of games and write results")
    add_dims(run_p)
    run_p.add_argument(
        "--strategy",
        action="append",
        default=None,
        choices=STRATEGY_NAMES,
        help="strategy to run (repeatable)",
    )
    run_p.add_argument("--first-move", default=FIRST_MOVE_HALF)
    run_p.add_argument("--mode", choices=["full", "instances"], default=None)
    run_p.add_argument("--reps", type=int, default=1)
    run_p.add_argument("--instances", default=None, help="instance file path")
    run_p.add_argument("--seed", type=int, default=1)
    run_p.add_argument("--max-moves", type=int, default=15)
    run_p.add_argument("--deterministic", action="store_true")
    run_p.add_argument("--workers", type=int, default=None)
    run_p.add_argument("--out-dir", default=None)
    run_p.set_defaults(func=cmd_run)

    gen_p = sub.add_parser("gen-instances", help="generate a benchmark instance file")
    add_dims(gen_p, kappa=8)
    gen_p.add_argument("--size", type=int, required=True)
    gen_p.add_argument("--seed", type=int, default=1)
    gen_p.add_argument("--out", required=True)
    gen_p.set_defaults(func=cmd_gen_instances)

    cmp_p = sub.add_parser("compare", help="paired comparison of two game logs")
    cmp_p.add_argument("a", help="first games.jsonl")
    cmp_p.add_argument("b", help="second games.jsonl")
    cmp_p.add_argument("--strategy-a", default=None)
    cmp_p.add_argument("--strategy-b", default=None)
    cmp_p.set_defaults(func=cmd_compare)

    replay_p = sub.add_parser("replay", help="re-simulate recorded games and verify")
    replay_p.add_argument("games", help="games.jsonl to check")
    replay_p.set_defaults(func=cmd_replay)

    play_p = sub.add_parser("play", help="interactive terminal advisor")
    add_dims(play_p)
    play_p.add_argument("--strategy", default="entropy", choices=STRATEGY_NAMES)
    play_p.add_argument("--first-move", default=FIRST_MOVE_HALF)
    play_p.add_argument("--seed", type=int, default=None)
    play_p.add_argument("--deterministic", action="store_true")
    play_p.set_defaults(func=cmd_play)

    serve_p = sub.add_parser("serve", help="run the advisor HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.add_argument("--static", default=None, help="static UI directory to mount")
    serve_p.add_argument("--space-budget", type=int, default=65_536)
    serve_p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run" and not args.strategy:
        args.strategy = ["entropy"]
    try:
        return args.func(args)
    except (CodeError, ValueError, EmptyConsistentSetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
