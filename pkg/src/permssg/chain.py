"""Exact absorption probabilities of finite Markov chains.

Two entry points share one exact Gaussian elimination:

* :func:`embed_chain` / :func:`solve_chain` build and solve the (k+2)-state
  chain obtained by merging every f-region into one state.
* :func:`induced_values` evaluates a game once every controlled vertex has a
  fixed successor, collapsing deterministic runs so only random vertices
  remain as unknowns.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .game import Game, Permutation, Valuation
from .regions import RegionPartition, f_partition

ZERO = Fraction(0)
ONE = Fraction(1)


class SingularSystemError(ArithmeticError):
    pass


def solve_linear(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve ``a x = b`` exactly; ``a`` and ``b`` are modified in place.

    Pivots are chosen among the non-zero candidates of a column by the
    smallest ``|numerator| * denominator``, which keeps intermediate
    fractions short.
    """
    n = len(a)
    for col in range(n):
        pivot_row, best = -1, None
        for r in range(col, n):
            x = a[r][col]
            if x:
                size = abs(x.numerator) * x.denominator
                if best is None or size < best:
                    pivot_row, best = r, size
        if pivot_row < 0:
            raise SingularSystemError(f"no pivot in column {col}")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            b[col], b[pivot_row] = b[pivot_row], b[col]
        row = a[col]
        p = row[col]
        for r in range(col + 1, n):
            factor = a[r][col]
            if not factor:
                continue
            factor /= p
            target_row = a[r]
            for c in range(col, n):
                if row[c]:
                    target_row[c] -= factor * row[c]
            b[r] -= factor * b[col]
    x = [ZERO] * n
    for r in range(n - 1, -1, -1):
        acc = b[r]
        row = a[r]
        for c in range(r + 1, n):
            if row[c]:
                acc -= row[c] * x[c]
        x[r] = acc / row[r]
    return x


def absorption_values(
    rows: Sequence[Mapping[int, Fraction]], target: int
) -> tuple[list[Fraction], frozenset[int]]:
    """Probability of eventually hitting ``target`` from each state.

    ``rows[s]`` maps successors to probabilities; ``target`` is absorbing
    whatever its row says. Returns the values and the set of states from
    which ``target`` is reachable; all other states get 0.
    """
    n = len(rows)
    preds: list[list[int]] = [[] for _ in range(n)]
    for s, row in enumerate(rows):
        if s == target:
            continue
        for t, p in row.items():
            if p:
                preds[t].append(s)
    reach = {target}
    queue = deque([target])
    while queue:
        t = queue.popleft()
        for s in preds[t]:
            if s not in reach:
                reach.add(s)
                queue.append(s)
    unknowns = sorted(s for s in reach if s != target)
    pos = {s: i for i, s in enumerate(unknowns)}
    m = len(unknowns)
    a = [[ZERO] * m for _ in range(m)]
    b = [ZERO] * m
    for s, i in pos.items():
        a[i][i] += ONE
        for t, p in rows[s].items():
            if t == target:
                b[i] += p
            elif t in pos:
                a[i][pos[t]] -= p
    x = solve_linear(a, b) if m else []
    values = [ZERO] * n
    values[target] = ONE
    for s, i in pos.items():
        values[s] = x[i]
    return values, frozenset(reach)


@dataclass(frozen=True)
class EmbeddedChain:
    """States ``0..k+1``; 0 is the sink region, ``k+1`` the target, both absorbing."""

    p: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.p)


@dataclass(frozen=True)
class ChainValues:
    x: tuple[Fraction, ...]
    reachable: frozenset[int]


def embed_chain(game: Game, partition: RegionPartition) -> EmbeddedChain:
    """Row ``i`` spreads the distribution of the rank-``i`` random vertex over the region ranks."""
    k = partition.k
    rank = partition.rank
    p = [[ZERO] * (k + 2) for _ in range(k + 2)]
    p[0][0] = ONE
    p[k + 1][k + 1] = ONE
    for i, r in enumerate(partition.permutation, start=1):
        row = p[i]
        for w, q in game.dist[r].items():
            row[rank[w]] += q
    return EmbeddedChain(tuple(tuple(row) for row in p))


def solve_chain(chain: EmbeddedChain) -> ChainValues:
    top = chain.size - 1
    rows = [{j: q for j, q in enumerate(row) if q} for row in chain.p]
    values, reach = absorption_values(rows, top)
    return ChainValues(tuple(values), reach)


def chain_residuals(chain: EmbeddedChain, values: ChainValues) -> list[Fraction]:
    """``x_i - sum_j p_ij x_j`` for every transient state; exact solutions give all zeros."""
    x = values.x
    out = []
    for i in range(1, chain.size - 1):
        out.append(x[i] - sum((q * x[j] for j, q in enumerate(chain.p[i]) if q), ZERO))
    return out


@dataclass(frozen=True)
class FValues:
    values: Valuation
    partition: RegionPartition
    chain: EmbeddedChain


def compute_f_values(game: Game, f: Permutation, partition: RegionPartition | None = None) -> FValues:
    """Values of the normalized game when both players follow their f-strategies."""
    if partition is None:
        partition = f_partition(game, f)
    chain = embed_chain(game, partition)
    x = solve_chain(chain).x
    return FValues([x[r] for r in partition.rank], partition, chain)


def induced_values(game: Game, choice: Mapping[int, int]) -> Valuation:
    """Reach probabilities when every controlled vertex ``v`` moves to ``choice[v]``.

    Runs of controlled vertices are followed to the first random or terminal
    vertex they hit; a run that cycles among controlled vertices never reaches
    the target and is worth 0.
    """
    n = len(game)
    kinds = game.kinds
    exit_of = [-1] * n
    trapped = -2
    for v in range(n):
        if not kinds[v].controlled:
            exit_of[v] = v
    for start in range(n):
        if exit_of[start] != -1:
            continue
        path = []
        on_path = set()
        v = start
        while exit_of[v] == -1 and v not in on_path:
            path.append(v)
            on_path.add(v)
            v = choice[v]
        end = exit_of[v] if exit_of[v] != -1 else trapped
        for u in path:
            exit_of[u] = end

    randoms = game.random_vertices
    target = game.target
    # states: random vertices, then the target, then one shared zero state
    pos = {r: i for i, r in enumerate(randoms)}
    t_state, z_state = len(randoms), len(randoms) + 1

    def state_of(v: int) -> int:
        e = exit_of[v]
        if e == target:
            return t_state
        if e in pos:
            return pos[e]
        return z_state

    rows: list[dict[int, Fraction]] = []
    for r in randoms:
        row: dict[int, Fraction] = {}
        for w, q in game.dist[r].items():
            s = state_of(w)
            row[s] = row.get(s, ZERO) + q
        rows.append(row)
    rows.append({t_state: ONE})
    rows.append({z_state: ONE})
    x, _ = absorption_values(rows, t_state)
    return [x[state_of(v)] for v in range(n)]
