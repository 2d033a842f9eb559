"""Ground truth for small games.

Brute force over every pair of positional strategies, with its own exact
chain evaluator (state elimination) so it shares no arithmetic code with
the permutation solvers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .game import Game, Kind, PositionalStrategy, Valuation
from .improvement import restrict_game, solve_one_player

DEFAULT_PAIR_CAP = 10**6


class StrategySpaceTooLarge(ValueError):
    def __init__(self, pairs: int, cap: int):
        self.pairs = pairs
        self.cap = cap
        super().__init__(f"strategy space has {pairs} pairs, cap is {cap}")


class MinimaxMismatch(AssertionError):
    pass


def strategy_space(game: Game, player: Kind) -> list[PositionalStrategy]:
    owned = game.vertices_of(player)
    return [dict(zip(owned, pick)) for pick in itertools.product(*(game.edges[v] for v in owned))]


def strategy_space_size(game: Game, player: Kind) -> int:
    return math.prod(len(game.edges[v]) for v in game.vertices_of(player))


def play_values(game: Game, sigma: Mapping[int, int], tau: Mapping[int, int]) -> Valuation:
    """Reach probabilities of the Markov chain induced by ``sigma`` and ``tau``.

    States that cannot reach the target are set to 0; the others are
    eliminated one at a time and recovered by back substitution.
    """
    n = len(game)
    target = game.target
    rows: list[dict[int, Fraction]] = []
    for v, kind in enumerate(game.kinds):
        if kind is Kind.MAX:
            rows.append({sigma[v]: Fraction(1)})
        elif kind is Kind.MIN:
            rows.append({tau[v]: Fraction(1)})
        elif kind is Kind.RANDOM:
            rows.append(dict(game.dist[v]))
        else:
            rows.append({})

    reach = {target}
    frontier = [target]
    while frontier:
        w = frontier.pop()
        for v in range(n):
            if v not in reach and w in rows[v]:
                reach.add(v)
                frontier.append(v)

    live = [v for v in range(n) if v in reach and v != target]
    work = {v: {w: p for w, p in rows[v].items() if w in reach} for v in live}
    eliminated: list[int] = []
    pending = set(live)
    for s in live:
        row = work[s]
        stay = row.pop(s, Fraction(0))
        scale = 1 / (1 - stay)
        for w in row:
            row[w] *= scale
        pending.discard(s)
        for u in pending:
            into = work[u].pop(s, None)
            if into is None:
                continue
            other = work[u]
            for w, p in row.items():
                other[w] = other.get(w, Fraction(0)) + into * p
        eliminated.append(s)

    x = [Fraction(0)] * n
    x[target] = Fraction(1)
    for s in reversed(eliminated):
        x[s] = sum((p * x[w] for w, p in work[s].items()), Fraction(0))
    return x


@dataclass(frozen=True)
class OracleResult:
    values: Valuation
    max_strategy: PositionalStrategy
    min_strategy: PositionalStrategy
    pairs: int


def brute_force_solve(game: Game, cap: int = DEFAULT_PAIR_CAP) -> OracleResult:
    """Max-min over all positional strategy pairs, checked against min-max.

    Also returns a Max strategy whose worst case meets the values at every
    vertex, and a Min strategy whose best response does.
    """
    pairs = strategy_space_size(game, Kind.MAX) * strategy_space_size(game, Kind.MIN)
    if pairs > cap:
        raise StrategySpaceTooLarge(pairs, cap)
    sigmas = strategy_space(game, Kind.MAX)
    taus = strategy_space(game, Kind.MIN)
    n = len(game)
    table = [[play_values(game, s, t) for t in taus] for s in sigmas]
    worst = [[min(row[j][v] for j in range(len(taus))) for v in range(n)] for row in table]
    best = [
        [max(table[i][j][v] for i in range(len(sigmas))) for v in range(n)]
        for j in range(len(taus))
    ]
    maxmin = [max(w[v] for w in worst) for v in range(n)]
    minmax = [min(b[v] for b in best) for v in range(n)]
    if maxmin != minmax:
        raise MinimaxMismatch(f"max-min {maxmin} differs from min-max {minmax}")
    sigma = next(s for s, w in zip(sigmas, worst) if w == maxmin)
    tau = next(t for t, b in zip(taus, best) if b == minmax)
    return OracleResult(maxmin, sigma, tau, pairs)


def brute_force_values(game: Game, cap: int = DEFAULT_PAIR_CAP) -> Valuation:
    return brute_force_solve(game, cap).values


def best_response_value(game: Game, player: Kind, strategy: PositionalStrategy) -> Valuation:
    """Values when ``player`` is committed to ``strategy`` and the opponent responds optimally."""
    restricted = restrict_game(game, strategy, player)
    opponent = Kind.MIN if player is Kind.MAX else Kind.MAX
    return solve_one_player(restricted, opponent)[0]


def verify_optimal(game: Game, sigma: PositionalStrategy, tau: PositionalStrategy) -> bool:
    """Both strategies are optimal iff what ``sigma`` guarantees equals what ``tau`` concedes."""
    return best_response_value(game, Kind.MAX, sigma) == best_response_value(game, Kind.MIN, tau)


def value_iterate(game: Game, rounds: int) -> list[float]:
    """Floating-point lower approximation of the values after ``rounds`` Bellman updates."""
    x = [1.0 if k is Kind.TARGET else 0.0 for k in game.kinds]
    for _ in range(rounds):
        nxt = list(x)
        for v, kind in enumerate(game.kinds):
            succ = game.edges[v]
            if kind is Kind.MAX:
                nxt[v] = max(x[w] for w in succ)
            elif kind is Kind.MIN:
                nxt[v] = min(x[w] for w in succ)
            elif kind is Kind.RANDOM:
                nxt[v] = sum(float(p) * x[w] for w, p in game.dist[v].items())
        x = nxt
    return x


def local_optimality_violations(game: Game, values: Valuation) -> list[str]:
    """Vertices where ``values`` break the max/min/average equations or the terminal values."""
    bad = []
    for v, kind in enumerate(game.kinds):
        succ = game.edges[v]
        if kind is Kind.TARGET:
            expected = Fraction(1)
        elif kind is Kind.SINK:
            expected = Fraction(0)
        elif kind is Kind.MAX:
            expected = max(values[w] for w in succ)
        elif kind is Kind.MIN:
            expected = min(values[w] for w in succ)
        else:
            expected = sum((p * values[w] for w, p in game.dist[v].items()), Fraction(0))
        if values[v] != expected:
            bad.append(f"{game.names[v]}: {values[v]} != {expected}")
    return bad
