"""Permutation improvement, one-player solving, and the naive sorting policy."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from .chain import compute_f_values, induced_values
from .enumeration import (
    build_live_permutation,
    check_liveness,
    evaluate_permutation,
    lift_solution,
)
from .game import (
    Game,
    Kind,
    Permutation,
    PositionalStrategy,
    Solution,
    Valuation,
    check_strategy,
    require_valid,
)
from .qualitative import NormalizationMap, normalize_game, positive_value_set
from .regions import compute_f_regions, with_strategies


def restrict_game(game: Game, strategy: PositionalStrategy, player: Kind = Kind.MAX) -> Game:
    """Freeze ``player``'s moves to ``strategy``: each of its vertices keeps a single edge."""
    check_strategy(game, player, strategy)
    edges = tuple(
        (strategy[v],) if kind is player else succ
        for v, (kind, succ) in enumerate(zip(game.kinds, game.edges))
    )
    return Game(names=game.names, kinds=game.kinds, edges=edges, dist=game.dist)


def solve_one_player(game: Game, player: Kind) -> tuple[Valuation, PositionalStrategy]:
    """Exact values and an optimal positional strategy for ``player`` when
    the opponent's vertices all have out-degree 1.

    Strategy iteration: evaluate the induced chain exactly and switch a
    vertex to a strictly better successor (least index among the best)
    until no switch applies. The value-0 region is settled first, otherwise
    a minimizer could stall on a cycle whose value looks as good as leaving.
    """
    opponent = Kind.MIN if player is Kind.MAX else Kind.MAX
    for v in game.vertices_of(opponent):
        if len(game.edges[v]) != 1:
            raise ValueError(f"{opponent.value} vertex {game.names[v]} has more than one edge")
    positive, safety = positive_value_set(game)
    choice = {v: game.edges[v][0] for v in range(len(game)) if game.kinds[v].controlled}
    if player is Kind.MIN:
        choice.update(safety)
    movable = [v for v in game.vertices_of(player) if v in positive]
    minimize = player is Kind.MIN
    while True:
        values = induced_values(game, choice)
        changed = False
        for v in movable:
            options = [values[w] for w in game.edges[v]]
            best = min(options) if minimize else max(options)
            current = values[choice[v]]
            if (best < current) if minimize else (best > current):
                choice[v] = game.edges[v][options.index(best)]
                changed = True
        if not changed:
            return values, {v: choice[v] for v in game.vertices_of(player)}


def solve_one_player_min(game: Game) -> tuple[Valuation, PositionalStrategy]:
    """Values ``inf_tau P(reach target)`` of a game whose Max vertices have one edge each."""
    return solve_one_player(game, Kind.MIN)


def strategy_value(game: Game, sigma: PositionalStrategy) -> Valuation:
    """What Max guarantees with ``sigma`` against every Min strategy."""
    return solve_one_player_min(restrict_game(game, sigma))[0]


def improvement_step(game: Game, f: Permutation) -> Permutation:
    """A permutation live and self-consistent in the game restricted to the f-strategy of Max."""
    return _improve(game, f)[0]


def _improve(game: Game, f: Permutation) -> tuple[Permutation, Valuation]:
    partition = with_strategies(game, compute_f_regions(game, f))
    restricted = restrict_game(game, partition.max_strategy)
    values = solve_one_player_min(restricted)[0]
    return build_live_permutation(restricted, values), values


@dataclass(frozen=True)
class TraceEntry:
    permutation: Permutation
    strategy_values: Valuation


@dataclass
class ImprovementTrace:
    """Permutations visited by :func:`improve_solve`, in normalized-game ids.

    Each entry carries the values Max guarantees with the f-strategy of that
    permutation.
    """

    normalization: NormalizationMap
    entries: list[TraceEntry] = field(default_factory=list)
    solution: Solution | None = None

    @property
    def steps(self) -> int:
        return len(self.entries) - 1


def _image_permutation(norm: NormalizationMap, f: Sequence[int]) -> Permutation:
    kept = [norm.vertex_map[v] for v in f]
    if any(norm.original.kinds[v] is not Kind.RANDOM for v in f):
        raise ValueError("permutation lists a non-random vertex")
    image_f = tuple(m for m in kept if isinstance(m, int))
    if sorted(image_f) != sorted(norm.image.random_vertices):
        raise ValueError("permutation does not cover the random vertices")
    return image_f


def _initial_permutation(norm: NormalizationMap, f0: Sequence[int] | None) -> Permutation:
    image = norm.image
    if f0 is None:
        return build_live_permutation(image, [0] * len(image))
    f = _image_permutation(norm, f0)
    if not check_liveness(image, compute_f_regions(image, f)):
        raise ValueError("initial permutation is not live")
    return f


def improve_solve(game: Game, f0: Sequence[int] | None = None) -> tuple[Solution, ImprovementTrace]:
    """Solve ``game`` by permutation improvement.

    ``f0`` lists the random vertices of ``game`` (those merged away by
    normalization are ignored) and must be live; by default a live
    permutation is built with all ties broken by vertex index.
    """
    require_valid(game)
    norm = normalize_game(game)
    image = norm.image
    f = _initial_permutation(norm, f0)
    trace = ImprovementTrace(norm)
    bound = math.factorial(len(f))
    while True:
        verdict, partition = evaluate_permutation(image, f)
        if not verdict.live:
            raise AssertionError(f"improvement produced a permutation that is not live: {f}")
        restricted = restrict_game(image, partition.max_strategy)
        guaranteed = solve_one_player_min(restricted)[0]
        trace.entries.append(TraceEntry(f, guaranteed))
        if verdict.self_consistent:
            break
        if trace.steps >= bound:
            raise AssertionError(f"more than {bound} improvement steps")
        f = build_live_permutation(restricted, guaranteed)
    trace.solution = lift_solution(norm, verdict.values, partition, {"steps": trace.steps})
    return trace.solution, trace


@dataclass(frozen=True)
class Converged:
    solution: Solution
    steps: int


@dataclass(frozen=True)
class CycleDetected:
    cycle: list[Permutation]
    steps: int


@dataclass(frozen=True)
class Undecided:
    visited: list[Permutation]


NaiveOutcome = Union[Converged, CycleDetected, Undecided]


def naive_improve(game: Game, f0: Sequence[int], max_steps: int) -> NaiveOutcome:
    """Repeatedly re-sort the permutation by its own f-values.

    The sort is stable, so equal values keep their current order. If the
    sorted permutation is not live it is rebuilt with
    :func:`build_live_permutation` guided by the same values, preferring
    the sorted order on ties. This policy can cycle; cycles are reported
    with the permutations (normalized-game ids) that repeat.
    """
    require_valid(game)
    norm = normalize_game(game)
    image = norm.image
    f = _initial_permutation(norm, f0)
    order = [f]
    seen = {f: 0}
    for step in range(max_steps + 1):
        verdict, partition = evaluate_permutation(image, f)
        if verdict.live and verdict.self_consistent:
            return Converged(lift_solution(norm, verdict.values, partition, {"steps": step}), step)
        if step == max_steps:
            break
        values = verdict.values
        if values is None:
            values = compute_f_values(image, f).values
        g = tuple(sorted(f, key=lambda r: values[r]))
        if not check_liveness(image, compute_f_regions(image, g)):
            g = build_live_permutation(image, values, prefer=g)
        if g in seen:
            return CycleDetected(order[seen[g]:], step + 1)
        seen[g] = len(order)
        order.append(g)
        f = g
    return Undecided(order)

