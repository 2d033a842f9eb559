"""Core types for simple stochastic games.

A game is a directed graph whose vertices belong to Max, Min, Random, or are
one of the two absorbing vertices: the target (Max wants to reach it) and the
optional sink. Probabilities are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

# A positional strategy maps each vertex of one player to a chosen successor.
PositionalStrategy = dict[int, int]
# A permutation lists the random vertices from rank 1 to rank k.
Permutation = tuple[int, ...]
# Dense valuation indexed by vertex id.
Valuation = list[Fraction]

ProbabilityLike = Union[Fraction, int, str]


class Kind(enum.Enum):
    MAX = "max"
    MIN = "min"
    RANDOM = "random"
    TARGET = "target"
    SINK = "sink"

    @property
    def controlled(self) -> bool:
        return self in (Kind.MAX, Kind.MIN)


class Violation(NamedTuple):
    vertex: int | None
    reason: str

    def __str__(self) -> str:
        return self.reason


@dataclass(frozen=True)
class Game:
    """Immutable simple stochastic game.

    ``edges[v]`` holds the successors of ``v`` in increasing index order and
    ``dist[v]`` the transition distribution of each random vertex ``v``.
    """

    names: tuple[str, ...]
    kinds: tuple[Kind, ...]
    edges: tuple[tuple[int, ...], ...]
    dist: Mapping[int, Mapping[int, Fraction]] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        vertices: Iterable[tuple[str, Kind | str]],
        edges: Iterable[tuple[str, str] | tuple[str, str, ProbabilityLike]],
    ) -> Game:
        """Build a game from ``(name, kind)`` pairs and named edges.

        Edges out of random vertices carry a third element, the probability.
        Only structural problems (unknown names, duplicates) are rejected
        here; use :func:`validate_game` for the model constraints.
        """
        names: list[str] = []
        kinds: list[Kind] = []
        index: dict[str, int] = {}
        for name, kind in vertices:
            if name in index:
                raise ValueError(f"duplicate vertex {name!r}")
            index[name] = len(names)
            names.append(name)
            kinds.append(Kind(kind))
        succ: list[set[int]] = [set() for _ in names]
        dist: dict[int, dict[int, Fraction]] = {
            v: {} for v, kind in enumerate(kinds) if kind is Kind.RANDOM
        }
        for edge in edges:
            src, dst = edge[0], edge[1]
            for name in (src, dst):
                if name not in index:
                    raise ValueError(f"unknown vertex {name!r}")
            v, w = index[src], index[dst]
            if w in succ[v]:
                raise ValueError(f"duplicate edge {src} -> {dst}")
            succ[v].add(w)
            if len(edge) > 2:
                if kinds[v] is not Kind.RANDOM:
                    raise ValueError(f"probability on edge from non-random vertex {src!r}")
                dist[v][w] = Fraction(edge[2])
        return cls(
            names=tuple(names),
            kinds=tuple(kinds),
            edges=tuple(tuple(sorted(s)) for s in succ),
            dist=dist,
        )

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: v for v, name in enumerate(self.names)}

    def vertices_of(self, kind: Kind) -> tuple[int, ...]:
        return tuple(v for v, k in enumerate(self.kinds) if k is kind)

    @cached_property
    def max_vertices(self) -> tuple[int, ...]:
        return self.vertices_of(Kind.MAX)

    @cached_property
    def min_vertices(self) -> tuple[int, ...]:
        return self.vertices_of(Kind.MIN)

    @cached_property
    def random_vertices(self) -> tuple[int, ...]:
        return self.vertices_of(Kind.RANDOM)

    @cached_property
    def target(self) -> int:
        found = self.vertices_of(Kind.TARGET)
        if len(found) != 1:
            raise ValueError(f"game has {len(found)} target vertices")
        return found[0]

    @cached_property
    def sink(self) -> int | None:
        found = self.vertices_of(Kind.SINK)
        if len(found) > 1:
            raise ValueError(f"game has {len(found)} sink vertices")
        return found[0] if found else None

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        preds: list[list[int]] = [[] for _ in self.names]
        for v, succ in enumerate(self.edges):
            for w in succ:
                preds[w].append(v)
        return tuple(tuple(p) for p in preds)

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.edges)

    def name_of(self, v: int) -> str:
        return self.names[v]

    def named(self, values: Sequence) -> dict[str, object]:
        """Re-key a dense per-vertex sequence by vertex name."""
        return {self.names[v]: x for v, x in enumerate(values)}


def validate_game(game: Game) -> list[Violation]:
    """Return every model violation in ``game``; an empty list means valid."""
    problems: list[Violation] = []
    n = len(game.names)
    if len(game.kinds) != n or len(game.edges) != n:
        return [Violation(None, "names, kinds and edges differ in length")]
    if len(set(game.names)) != n:
        problems.append(Violation(None, "vertex names are not unique"))
    targets = game.vertices_of(Kind.TARGET)
    if len(targets) != 1:
        problems.append(Violation(None, f"expected exactly one target, found {len(targets)}"))
    sinks = game.vertices_of(Kind.SINK)
    if len(sinks) > 1:
        problems.append(Violation(None, f"expected at most one sink, found {len(sinks)}"))
    for v, (kind, succ) in enumerate(zip(game.kinds, game.edges)):
        name = game.names[v]
        if any(not 0 <= w < n for w in succ):
            problems.append(Violation(v, f"vertex {name} has an edge to an unknown vertex"))
            continue
        if len(set(succ)) != len(succ):
            problems.append(Violation(v, f"vertex {name} has duplicate edges"))
        if kind.controlled and not succ:
            problems.append(Violation(v, f"controlled vertex {name} has out-degree 0"))
        if kind in (Kind.TARGET, Kind.SINK) and succ:
            problems.append(Violation(v, f"{kind.value} vertex {name} has outgoing edges"))
        if kind is Kind.RANDOM:
            problems.extend(_check_distribution(game, v))
        elif game.dist.get(v):
            problems.append(Violation(v, f"non-random vertex {name} has a distribution"))
    return problems


def _check_distribution(game: Game, v: int) -> list[Violation]:
    name = game.names[v]
    delta = game.dist.get(v, {})
    problems = []
    for w in game.edges[v]:
        if w not in delta:
            problems.append(Violation(v, f"random vertex {name} edge to {game.names[w]} missing probability"))
    for w, p in delta.items():
        if w not in game.edges[v]:
            problems.append(Violation(v, f"random vertex {name} has probability on non-edge to {w}"))
        if p <= 0:
            problems.append(Violation(v, f"random vertex {name} has non-positive probability {p} to {game.names[w]}"))
    if not game.edges[v]:
        problems.append(Violation(v, f"random vertex {name} has out-degree 0"))
    total = sum(delta.values(), Fraction(0))
    if total != 1:
        problems.append(Violation(v, f"random vertex {name}: distribution sums to {total} ≠ 1"))
    return problems


class InvalidGameError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(x) for x in self.violations))


def require_valid(game: Game) -> Game:
    problems = validate_game(game)
    if problems:
        raise InvalidGameError(problems)
    return game


def check_strategy(game: Game, player: Kind, strategy: Mapping[int, int]) -> None:
    """Raise ``ValueError`` unless ``strategy`` is total on ``player``'s vertices and uses edges."""
    owned = set(game.vertices_of(player))
    if set(strategy) != owned:
        missing = sorted(game.names[v] for v in owned - set(strategy))
        extra = sorted(str(v) for v in set(strategy) - owned)
        raise ValueError(f"{player.value} strategy domain mismatch: missing {missing}, extra {extra}")
    for v, w in strategy.items():
        if w not in game.edges[v]:
            raise ValueError(f"strategy moves {game.names[v]} along non-edge to {w}")


def check_permutation(game: Game, f: Sequence[int]) -> Permutation:
    f = tuple(f)
    if sorted(f) != sorted(game.random_vertices):
        raise ValueError("permutation is not a bijection onto the random vertices")
    return f


@dataclass
class Solution:
    """Values and optimal positional strategies of a game.

    ``permutation`` is the accepted permutation of the normalized game,
    expressed with the original vertex ids. ``stats`` counts the work done,
    e.g. ``{"permutations": 2}`` or ``{"steps": 1}``.
    """

    values: Valuation
    max_strategy: PositionalStrategy
    min_strategy: PositionalStrategy
    permutation: Permutation
    stats: dict[str, int] = field(default_factory=dict)


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
