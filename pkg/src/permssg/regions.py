"""Deterministic attractors, f-regions and f-strategies.

The deterministic attractor of a set X only grows through controlled
vertices: a Max vertex joins when one successor is inside, a Min vertex when
all of them are. Random vertices outside X never join.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .game import Game, Kind, Permutation, PositionalStrategy, check_permutation


class NotNormalizedError(ValueError):
    pass


class AttractorBuilder:
    """Counter-based attractor that can be grown by adding seeds.

    Each call to :meth:`add` attracts what the new seeds make reachable,
    treating everything already inside as level 0. Across calls every edge
    is inspected a bounded number of times, so growing the attractor one
    random vertex at a time costs O(|E|) overall.
    """

    def __init__(self, game: Game):
        self.game = game
        self.inside = [False] * len(game)
        self.level = [-1] * len(game)
        self._missing = [len(s) if k is Kind.MIN else 0 for k, s in zip(game.kinds, game.edges)]

    def __contains__(self, v: int) -> bool:
        return self.inside[v]

    def add(self, seeds: Iterable[int]) -> list[int]:
        """Add ``seeds`` and close under attraction; return the new vertices in level order."""
        game, inside, level, missing = self.game, self.inside, self.level, self._missing
        kinds, preds = game.kinds, game.predecessors
        queue: deque[int] = deque()
        for s in seeds:
            if not inside[s]:
                inside[s] = True
                level[s] = 0
                queue.append(s)
        added = []
        while queue:
            w = queue.popleft()
            added.append(w)
            for v in preds[w]:
                if inside[v]:
                    continue
                kind = kinds[v]
                if kind is Kind.MAX:
                    pass
                elif kind is Kind.MIN:
                    missing[v] -= 1
                    if missing[v]:
                        continue
                else:
                    continue
                inside[v] = True
                level[v] = level[w] + 1
                queue.append(v)
        return added


@dataclass(frozen=True)
class AttractorResult:
    attractor: frozenset[int]
    level: dict[int, int]
    attracting: PositionalStrategy
    trapping: PositionalStrategy


def deterministic_attractor(game: Game, seeds: Iterable[int]) -> AttractorResult:
    """Max's deterministic attractor to ``seeds`` with levels and both canonical strategies.

    The attracting strategy sends each Max vertex to its least-index successor
    of strictly lower level; the trapping strategy sends each Min vertex
    outside the attractor to its least-index successor outside it.
    """
    builder = AttractorBuilder(game)
    added = builder.add(seeds)
    level = {v: builder.level[v] for v in added}
    attracting = {}
    for v in added:
        if game.kinds[v] is Kind.MAX and level[v] > 0:
            attracting[v] = next(w for w in game.edges[v] if w in level and level[w] < level[v])
    trapping = {
        v: next(w for w in game.edges[v] if w not in level)
        for v in game.min_vertices
        if v not in level
    }
    return AttractorResult(frozenset(added), level, attracting, trapping)


@dataclass(frozen=True)
class RegionPartition:
    """The f-regions ``regions[0..k+1]`` and the rank of every vertex.

    ``level[v]`` is the attraction level of ``v`` inside its own region, where
    the random vertex of that region and all higher regions count as level 0.
    The strategies are empty until filled by :func:`compute_f_strategies`.
    """

    permutation: Permutation
    regions: tuple[frozenset[int], ...]
    rank: tuple[int, ...]
    level: tuple[int, ...]
    max_strategy: PositionalStrategy = field(default_factory=dict)
    min_strategy: PositionalStrategy = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.permutation)


def compute_f_regions(game: Game, f: Sequence[int]) -> RegionPartition:
    """Partition a normalized game into the embedded attractors of the suffixes of ``f``."""
    f = check_permutation(game, f)
    k = len(f)
    target, sink = game.target, game.sink
    if sink is None:
        raise NotNormalizedError("game not normalized: no sink vertex")
    n = len(game)
    rank = [-1] * n
    builder = AttractorBuilder(game)
    regions: list[frozenset[int]] = [frozenset()] * (k + 2)
    regions[k + 1] = frozenset([target])
    rank[target] = k + 1
    for i in range(k, 0, -1):
        seeds = [f[i - 1], target] if i == k else [f[i - 1]]
        added = [v for v in builder.add(seeds) if v != target]
        for v in added:
            rank[v] = i
        regions[i] = frozenset(added)
    regions[0] = frozenset([sink])
    rank[sink] = 0
    stray = sorted(game.names[v] for v in range(n) if rank[v] < 0)
    if stray:
        raise NotNormalizedError(f"game not normalized: vertices {stray} lie in no region")
    return RegionPartition(f, tuple(regions), tuple(rank), tuple(builder.level))


def compute_f_strategies(
    game: Game, partition: RegionPartition
) -> tuple[PositionalStrategy, PositionalStrategy]:
    """Max attracts toward higher ranks inside its region; Min stays inside its region.

    Ties go to the least successor index.
    """
    rank, level = partition.rank, partition.level
    sigma: PositionalStrategy = {}
    for v in game.max_vertices:
        r, lv = rank[v], level[v]
        sigma[v] = next(
            w for w in game.edges[v] if rank[w] > r or (rank[w] == r and level[w] < lv)
        )
    tau: PositionalStrategy = {}
    for v in game.min_vertices:
        r = rank[v]
        same = [w for w in game.edges[v] if rank[w] == r]
        tau[v] = same[0] if same else min(game.edges[v], key=lambda w: (rank[w], w))
    return sigma, tau


def with_strategies(game: Game, partition: RegionPartition) -> RegionPartition:
    sigma, tau = compute_f_strategies(game, partition)
    return replace(partition, max_strategy=sigma, min_strategy=tau)


def f_partition(game: Game, f: Sequence[int]) -> RegionPartition:
    """Regions together with the f-strategies."""
    return with_strategies(game, compute_f_regions(game, f))
