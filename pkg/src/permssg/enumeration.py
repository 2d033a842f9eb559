"""Permutation enumeration: search for a live and self-consistent permutation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .chain import compute_f_values
from .game import Game, Kind, Permutation, Solution, Valuation, require_valid
from .qualitative import NormalizationMap, normalize_game
from .regions import (
    AttractorBuilder,
    NotNormalizedError,
    RegionPartition,
    compute_f_regions,
    with_strategies,
)


class SearchExhaustedError(RuntimeError):
    pass


@dataclass(frozen=True)
class PermutationVerdict:
    live: bool
    self_consistent: bool
    values: Valuation | None


def check_liveness(game: Game, partition: RegionPartition) -> bool:
    """Every random vertex moves to a strictly higher region with positive probability."""
    rank = partition.rank
    for i, r in enumerate(partition.permutation, start=1):
        if not any(rank[w] > i for w in game.dist[r]):
            return False
    return True


def check_self_consistency(f: Sequence[int], values: Sequence) -> bool:
    """The f-values are non-decreasing along ``f``."""
    return all(values[a] <= values[b] for a, b in zip(f, f[1:]))


def evaluate_permutation(game: Game, f: Permutation) -> tuple[PermutationVerdict, RegionPartition]:
    """Liveness first; the f-values are only computed for live permutations."""
    partition = compute_f_regions(game, f)
    if not check_liveness(game, partition):
        return PermutationVerdict(False, False, None), partition
    partition = with_strategies(game, partition)
    values = compute_f_values(game, f, partition).values
    return PermutationVerdict(True, check_self_consistency(f, values), values), partition


def build_live_permutation(
    game: Game,
    guide: Sequence | Mapping[int, object],
    prefer: Sequence[int] | None = None,
) -> Permutation:
    """Fill ranks k..1, each time taking a random vertex with a positive edge
    into the current attractor, the one with the largest guide value.

    Ties go to the least vertex index, or, when ``prefer`` is given, to the
    vertex appearing latest in ``prefer``.
    """
    randoms = game.random_vertices
    if prefer is None:
        tie: Callable[[int], int] = lambda r: -r
    else:
        position = {r: i for i, r in enumerate(prefer)}
        tie = position.__getitem__
    builder = AttractorBuilder(game)
    builder.add([game.target])
    remaining = set(randoms)
    chosen: list[int] = []
    while remaining:
        candidates = [r for r in remaining if any(builder.inside[w] for w in game.dist[r])]
        if not candidates:
            raise NotNormalizedError("game not normalized: no random vertex can extend the permutation")
        best = max(candidates, key=lambda r: (guide[r], tie(r)))
        chosen.append(best)
        remaining.discard(best)
        builder.add([best])
    return tuple(reversed(chosen))


def lift_solution(
    norm: NormalizationMap,
    values: Valuation,
    partition: RegionPartition,
    stats: dict[str, int],
) -> Solution:
    preimage = norm.preimage
    return Solution(
        values=norm.lift_values(values),
        max_strategy=norm.lift_strategy(Kind.MAX, partition.max_strategy),
        min_strategy=norm.lift_strategy(Kind.MIN, partition.min_strategy),
        permutation=tuple(preimage[r] for r in partition.permutation),
        stats=stats,
    )


def enumerate_solve(game: Game) -> Solution:
    """Solve ``game`` by trying permutations in lexicographic order of vertex index."""
    require_valid(game)
    norm = normalize_game(game)
    image = norm.image
    examined = 0
    for f in itertools.permutations(image.random_vertices):
        examined += 1
        verdict, partition = evaluate_permutation(image, f)
        if verdict.live and verdict.self_consistent:
            return lift_solution(norm, verdict.values, partition, {"permutations": examined})
    raise SearchExhaustedError("no live self-consistent permutation")
