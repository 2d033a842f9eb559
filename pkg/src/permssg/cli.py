"""Command-line interface: ``permssg solve|check|normalize|generate|bench|export``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .enumeration import enumerate_solve
from .game import Game, InvalidGameError, Kind, Solution, format_fraction, validate_game
from .generate import GenSpec, bench_csv, generate_game, run_bench
from .improvement import improve_solve
from .io import GameSyntaxError, export_dot, parse_game, write_game
from .oracle import brute_force_solve, verify_optimal
from .qualitative import normalize_game

ALGORITHMS = ("enum", "improve", "oracle")


class CliError(Exception):
    pass


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str | None) -> Game:
    text = _read_text(path)
    where = path or "<stdin>"
    try:
        return parse_game(text)
    except (GameSyntaxError, InvalidGameError) as exc:
        raise CliError(f"{where}: {exc}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def solve(game: Game, algorithm: str) -> Solution:
    if algorithm == "enum":
        return enumerate_solve(game)
    if algorithm == "improve":
        return improve_solve(game)[0]
    if algorithm == "oracle":
        result = brute_force_solve(game)
        return Solution(result.values, result.max_strategy, result.min_strategy, (), {"pairs": result.pairs})
    raise ValueError(f"unknown algorithm {algorithm!r}")


def format_report(game: Game, solution: Solution, algorithm: str) -> str:
    name = game.names
    lines = [f"value {name[v]} {format_fraction(x)}" for v, x in enumerate(solution.values)]
    lines += [f"max-strategy {name[v]} {name[w]}" for v, w in sorted(solution.max_strategy.items())]
    lines += [f"min-strategy {name[v]} {name[w]}" for v, w in sorted(solution.min_strategy.items())]
    if algorithm != "oracle":
        lines.append(" ".join(["permutation", *(name[r] for r in solution.permutation)]))
    lines.append(" ".join(["stats", *(f"{k}={v}" for k, v in solution.stats.items())]))
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    game = _load(args.input)
    solution = solve(game, args.algorithm)
    if args.stats and not verify_optimal(game, solution.max_strategy, solution.min_strategy):
        raise CliError("returned strategies failed the optimality check")
    _emit(format_report(game, solution, args.algorithm), args.output)
    if args.emit_dot:
        dot = export_dot(game, solution.values, (solution.max_strategy, solution.min_strategy))
        _emit(dot, args.emit_dot)
    return 0


def cmd_check(args) -> int:
    text = _read_text(args.input)
    try:
        game = parse_game(text)
    except (GameSyntaxError, InvalidGameError) as exc:
        raise CliError(f"{args.input or '<stdin>'}: {exc}") from None
    # parse_game already validated; this just reports the shape
    assert not validate_game(game)
    counts = {kind: len(game.vertices_of(kind)) for kind in Kind}
    print(
        f"ok vertices={len(game)} edges={game.edge_count} "
        f"max={counts[Kind.MAX]} min={counts[Kind.MIN]} random={counts[Kind.RANDOM]}"
    )
    return 0


def cmd_normalize(args) -> int:
    game = _load(args.input)
    _emit(write_game(normalize_game(game).image), args.output)
    return 0


def cmd_generate(args) -> int:
    try:
        spec = GenSpec(
            n_max=args.max, n_min=args.min, n_random=args.random,
            min_degree=args.min_degree, max_degree=args.max_degree,
            max_denominator=args.max_denominator, terminal_prob=args.terminal_prob,
            seed=args.seed, layered=args.layered,
        )
        game = generate_game(spec)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    _emit(write_game(game), args.output)
    return 0


def cmd_bench(args) -> int:
    rows = run_bench(args.n, args.k, tuple(args.algorithms), seed=args.seed)
    _emit(bench_csv(rows), args.output)
    return 0


def cmd_export(args) -> int:
    game = _load(args.input)
    if args.solve:
        solution = solve(game, args.solve)
        dot = export_dot(game, solution.values, (solution.max_strategy, solution.min_strategy))
    else:
        dot = export_dot(game)
    _emit(dot, args.output)
    return 0


def _int_list(text: str) -> list[int]:
    """``"1,2,5"`` or a range ``"1-5"``."""
    out: list[int] = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permssg", description="Exact solver for simple stochastic games.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute values and optimal strategies")
    p.add_argument("input_pos", nargs="?", metavar="INPUT")
    p.add_argument("--input", "-i")
    p.add_argument("--algorithm", "-a", choices=ALGORITHMS, default="enum")
    p.add_argument("--output", "-o")
    p.add_argument("--emit-dot", metavar="PATH")
    p.add_argument("--stats", action="store_true", help="verify optimality of the strategies before reporting")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="parse and validate a game file")
    p.add_argument("input_pos", nargs="?", metavar="INPUT")
    p.add_argument("--input", "-i")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normalize", help="write the normalized game")
    p.add_argument("input_pos", nargs="?", metavar="INPUT")
    p.add_argument("--input", "-i")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("generate", help="write a seeded random game")
    p.add_argument("--max", type=int, default=3)
    p.add_argument("--min", type=int, default=3)
    p.add_argument("--random", type=int, default=2)
    p.add_argument("--min-degree", type=int, default=1)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--max-denominator", type=int, default=4)
    p.add_argument("--terminal-prob", type=float, default=0.3)
    p.add_argument("--layered", action="store_true", help="generate a game that is already normalized")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="time the solvers on generated games, CSV output")
    p.add_argument("--n", type=_int_list, default=[500], help="total vertex counts, e.g. 500,1000")
    p.add_argument("--k", type=_int_list, default=[1, 2, 3, 4, 5], help="random vertex counts, e.g. 1-5")
    p.add_argument("--algorithms", nargs="+", choices=("enum", "improve"), default=["enum", "improve"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export", help="write the game as DOT")
    p.add_argument("input_pos", nargs="?", metavar="INPUT")
    p.add_argument("--input", "-i")
    p.add_argument("--solve", choices=ALGORITHMS, help="annotate with values and strategies")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if hasattr(args, "input_pos"):
        if args.input and args.input_pos:
            print("permssg: error: give the input once", file=sys.stderr)
            return 2
        args.input = args.input or args.input_pos
    try:
        return args.func(args)
    except CliError as exc:
        print(f"permssg: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
