"""Value-0 and value-1 regions, and the normalized game.

A game is normalized when the target is the only vertex of value 1 and a
single sink is the only vertex of value 0. :func:`normalize_game` merges the
value-1 region into the target and the value-0 region into a sink and keeps
enough bookkeeping to lift values and strategies back.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .game import Game, Kind, PositionalStrategy, Valuation


class QualitativeSet(NamedTuple):
    vertices: frozenset[int]
    strategy: PositionalStrategy


def _positive_attractor(game: Game, allowed: Sequence[bool], goal: int) -> list[int]:
    """Levels of the least set containing ``goal`` within ``allowed`` that
    Max can reach with positive probability (-1 outside).

    Min vertices need all of their allowed successors inside.
    """
    n = len(game)
    level = [-1] * n
    kinds, preds, edges = game.kinds, game.predecessors, game.edges
    missing = [
        sum(1 for w in edges[v] if allowed[w]) if kinds[v] is Kind.MIN else 0 for v in range(n)
    ]
    if not allowed[goal]:
        return level
    level[goal] = 0
    queue = deque([goal])
    while queue:
        w = queue.popleft()
        for v in preds[w]:
            if level[v] >= 0 or not allowed[v]:
                continue
            if kinds[v] is Kind.MIN:
                missing[v] -= 1
                if missing[v]:
                    continue
            level[v] = level[w] + 1
            queue.append(v)
    return level


def positive_value_set(game: Game) -> QualitativeSet:
    """Vertices of positive value, with a Min strategy that keeps the rest at value 0.

    Max vertices join with one successor inside, Min vertices with all of
    them, random vertices with one positive-probability successor. Each Min
    vertex left outside has a successor outside; the returned strategy picks
    the least-index one.
    """
    n = len(game)
    level = _positive_attractor(game, [True] * n, game.target)
    inside = frozenset(v for v in range(n) if level[v] >= 0)
    safety = {
        v: next(w for w in game.edges[v] if w not in inside)
        for v in game.min_vertices
        if v not in inside
    }
    return QualitativeSet(inside, safety)


def almost_sure_set(game: Game) -> QualitativeSet:
    """Vertices of value 1, with a Max strategy winning almost surely from them.

    Iterated elimination: close the candidate set under Min and random
    moves, keep what can still reach the target with positive probability
    inside it, and repeat until nothing changes.
    """
    n = len(game)
    kinds, edges, preds = game.kinds, game.edges, game.predecessors
    alive = [True] * n
    max_inside = [len(edges[v]) if kinds[v] is Kind.MAX else 0 for v in range(n)]
    target = game.target

    def remove(start: list[int]) -> None:
        queue = deque(start)
        for v in start:
            alive[v] = False
        while queue:
            w = queue.popleft()
            for v in preds[w]:
                if not alive[v]:
                    continue
                if kinds[v] is Kind.MAX:
                    max_inside[v] -= 1
                    if max_inside[v]:
                        continue
                alive[v] = False
                queue.append(v)

    while True:
        level = _positive_attractor(game, alive, target)
        dropped = [v for v in range(n) if alive[v] and level[v] < 0]
        if not dropped:
            break
        remove(dropped)

    inside = frozenset(v for v in range(n) if alive[v])
    strategy = {
        v: next(w for w in edges[v] if alive[w] and 0 <= level[w] < level[v])
        for v in game.max_vertices
        if alive[v]
    }
    return QualitativeSet(inside, strategy)


class Merged(enum.Enum):
    TARGET = "merged-to-target"
    SINK = "merged-to-sink"


@dataclass(frozen=True)
class NormalizationMap:
    """How an original game relates to its normalized image.

    ``vertex_map[v]`` is the image index of original vertex ``v``, or a
    :class:`Merged` marker. The original target and sink map to the image
    target and sink. ``max_boundary`` wins almost surely on the value-1
    region; ``min_boundary`` keeps the value-0 region at value 0.
    """

    original: Game
    image: Game
    vertex_map: tuple[int | Merged, ...]
    max_boundary: PositionalStrategy
    min_boundary: PositionalStrategy

    def image_of(self, v: int) -> int:
        m = self.vertex_map[v]
        if m is Merged.TARGET:
            return self.image.target
        if m is Merged.SINK:
            return self.image.sink
        return m

    @property
    def preimage(self) -> dict[int, int]:
        return {m: v for v, m in enumerate(self.vertex_map) if isinstance(m, int)}

    def is_identity(self) -> bool:
        return (
            all(m == v for v, m in enumerate(self.vertex_map))
            and self.image == self.original
        )

    def lift_values(self, image_values: Sequence[Fraction]) -> Valuation:
        out = []
        for m in self.vertex_map:
            if m is Merged.TARGET:
                out.append(Fraction(1))
            elif m is Merged.SINK:
                out.append(Fraction(0))
            else:
                out.append(image_values[m])
        return out

    def lift_strategy(self, player: Kind, image_strategy: PositionalStrategy) -> PositionalStrategy:
        """Carry an image strategy back to ``player``'s vertices of the original game.

        A move to a merged class becomes the least-index original successor
        in that class. Vertices merged away use the boundary strategies, or
        their least-index successor where any move is as good.
        """
        g = self.original
        boundary = self.max_boundary if player is Kind.MAX else self.min_boundary
        out: PositionalStrategy = {}
        for v in g.vertices_of(player):
            m = self.vertex_map[v]
            if isinstance(m, int):
                goal = image_strategy[m]
                out[v] = next(w for w in g.edges[v] if self.image_of(w) == goal)
            else:
                out[v] = boundary.get(v, g.edges[v][0])
        return out


def _fresh_name(taken: set[str], base: str) -> str:
    name, i = base, 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


def normalize_game(game: Game) -> NormalizationMap:
    positive = positive_value_set(game)
    sure = almost_sure_set(game)
    target, sink = game.target, game.sink
    n = len(game)

    keep = [
        v for v in range(n)
        if v == target or v == sink or (v in positive.vertices and v not in sure.vertices)
    ]
    names = [game.names[v] for v in keep]
    kinds = [game.kinds[v] for v in keep]
    if sink is None:
        names.append(_fresh_name(set(game.names), "sink"))
        kinds.append(Kind.SINK)
    position = {v: i for i, v in enumerate(keep)}
    image_target = position[target]
    image_sink = position[sink] if sink is not None else len(keep)

    vertex_map: list[int | Merged] = []
    for v in range(n):
        if v in position:
            vertex_map.append(position[v])
        elif v in sure.vertices:
            vertex_map.append(Merged.TARGET)
        else:
            vertex_map.append(Merged.SINK)

    def class_of(w: int) -> int:
        m = vertex_map[w]
        if m is Merged.TARGET:
            return image_target
        if m is Merged.SINK:
            return image_sink
        return m

    edges: list[tuple[int, ...]] = []
    dist: dict[int, dict[int, Fraction]] = {}
    for i, v in enumerate(keep):
        if game.kinds[v] is Kind.RANDOM:
            delta: dict[int, Fraction] = {}
            for w, p in game.dist[v].items():
                c = class_of(w)
                delta[c] = delta.get(c, Fraction(0)) + p
            dist[i] = delta
            edges.append(tuple(sorted(delta)))
        else:
            edges.append(tuple(sorted({class_of(w) for w in game.edges[v]})))
    if sink is None:
        edges.append(())

    image = Game(names=tuple(names), kinds=tuple(kinds), edges=tuple(edges), dist=dist)
    return NormalizationMap(
        original=game,
        image=image,
        vertex_map=tuple(vertex_map),
        max_boundary=dict(sure.strategy),
        min_boundary=dict(positive.strategy),
    )


def is_normalized(game: Game) -> bool:
    return normalize_game(game).is_identity()
