"""Seeded random games and the FPT benchmark."""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .game import Game, Kind, require_valid


@dataclass(frozen=True)
class GenSpec:
    n_max: int
    n_min: int
    n_random: int
    min_degree: int = 1
    max_degree: int = 3
    max_denominator: int = 4
    terminal_prob: float = 0.3
    seed: int = 0
    layered: bool = False

    @property
    def n_vertices(self) -> int:
        return self.n_max + self.n_min + self.n_random + 2


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    """``total`` split into ``parts`` positive integers, uniformly over compositions."""
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0, *cuts, total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def generate_game(spec: GenSpec) -> Game:
    """Random game with vertices ``x0.. n0.. r0.. T S`` (Max, Min, Random, target, sink).

    Controlled vertices get an out-degree in the configured range with
    uniformly drawn successors; random vertices get a support of the same
    size range and probabilities ``a/q`` with ``q <= max_denominator``. Each
    non-terminal vertex additionally gains an edge to the target or the sink
    with probability ``terminal_prob``.
    """
    if min(spec.n_max, spec.n_min, spec.n_random) < 0:
        raise ValueError("vertex counts must be non-negative")
    if not 1 <= spec.min_degree <= spec.max_degree:
        raise ValueError("degree range must satisfy 1 <= min_degree <= max_degree")
    if spec.max_degree > spec.n_vertices:
        raise ValueError(f"degree range exceeds the {spec.n_vertices} available vertices")
    if spec.max_denominator < 1:
        raise ValueError("max_denominator must be positive")
    if not 0 <= spec.terminal_prob <= 1:
        raise ValueError("terminal_prob must lie in [0, 1]")

    rng = random.Random(spec.seed)
    if spec.layered:
        return _layered_game(spec, rng)
    vertices = _vertex_list(spec)
    n = len(vertices)
    target, sink = n - 2, n - 1
    edges: list[tuple] = []
    for v, (name, kind) in enumerate(vertices[:-2]):
        cap = spec.max_denominator if kind is Kind.RANDOM else n
        degree = min(rng.randint(spec.min_degree, spec.max_degree), cap)
        succ = set(rng.sample(range(n), degree))
        if rng.random() < spec.terminal_prob and len(succ) < cap:
            succ.add(rng.choice((target, sink)))
        succ = sorted(succ)
        if kind is Kind.RANDOM:
            q = rng.randint(len(succ), spec.max_denominator)
            for w, a in zip(succ, _composition(rng, q, len(succ))):
                edges.append((name, vertices[w][0], Fraction(a, q)))
        else:
            edges.extend((name, vertices[w][0]) for w in succ)
    return require_valid(Game.build(vertices, edges))


def _vertex_list(spec: GenSpec) -> list[tuple[str, Kind]]:
    return (
        [(f"x{i}", Kind.MAX) for i in range(spec.n_max)]
        + [(f"n{i}", Kind.MIN) for i in range(spec.n_min)]
        + [(f"r{i}", Kind.RANDOM) for i in range(spec.n_random)]
        + [("T", Kind.TARGET), ("S", Kind.SINK)]
    )


def _layered_game(spec: GenSpec, rng: random.Random) -> Game:
    """A game that is already normalized, so no vertex is lost to normalization.

    Controlled vertices are shuffled into a sequence. Each one has an edge to
    a random vertex or an earlier controlled vertex; Min vertices have only
    such edges, Max vertices may also point anywhere else. Only random
    vertices touch the target and the sink, and always both of them.
    """
    if spec.n_random < 1:
        raise ValueError("layered games need at least one random vertex")
    if spec.max_denominator < 3:
        raise ValueError("layered games need max_denominator >= 3")
    vertices = _vertex_list(spec)
    n = len(vertices)
    target, sink = n - 2, n - 1
    randoms = list(range(spec.n_max + spec.n_min, n - 2))
    controlled = list(range(spec.n_max + spec.n_min))
    rng.shuffle(controlled)
    inner = randoms + controlled
    edges: list[tuple] = []
    for p, v in enumerate(controlled):
        name, kind = vertices[v]
        down = randoms + controlled[:p]
        degree = rng.randint(spec.min_degree, spec.max_degree)
        pool = down if kind is Kind.MIN else inner
        succ = {rng.choice(down)}
        while len(succ) < min(degree, len(pool)):
            succ.add(rng.choice(pool))
        edges.extend((name, vertices[w][0]) for w in sorted(succ))
    for r in randoms:
        extra = rng.randint(max(0, spec.min_degree - 2), max(0, min(spec.max_degree, spec.max_denominator) - 2))
        succ = sorted({target, sink, *rng.sample(inner, min(extra, len(inner)))})
        q = rng.randint(len(succ), spec.max_denominator)
        for w, a in zip(succ, _composition(rng, q, len(succ))):
            edges.append((vertices[r][0], vertices[w][0], Fraction(a, q)))
    return require_valid(Game.build(vertices, edges))


def corpus_spec(seed: int, max_vertices: int = 9, max_random: int = 3, max_denominator: int = 4) -> GenSpec:
    """A small game shape drawn from ``seed``: at most ``max_vertices`` vertices in total.

    Larger random-vertex counts are drawn more often, and terminal edges are
    frequent, so that many games keep random vertices after normalization.
    """
    rng = random.Random(seed)
    weights = [1 + i for i in range(max_random + 1)]
    k = rng.choices(range(max_random + 1), weights=weights)[0]
    controlled = rng.randint(1, max(1, max_vertices - 2 - k))
    n_max = rng.randint(0, controlled)
    return GenSpec(
        n_max=n_max,
        n_min=controlled - n_max,
        n_random=k,
        min_degree=1,
        max_degree=3,
        max_denominator=max_denominator,
        terminal_prob=0.7,
        seed=seed,
    )


def bench_spec(n: int, k: int, seed: int) -> GenSpec:
    """Shape used by the benchmark: ``n`` vertices in total, about ``3n`` edges.

    With at least one random vertex the game is layered, so normalization
    keeps all of it and the solvers face the full size.
    """
    controlled = n - k - 2
    if controlled < 0:
        raise ValueError("n too small for k random vertices")
    return GenSpec(
        n_max=controlled // 2,
        n_min=controlled - controlled // 2,
        n_random=k,
        min_degree=2,
        max_degree=4,
        max_denominator=8,
        terminal_prob=0.0,
        seed=seed,
        layered=k >= 1,
    )


BENCH_COLUMNS = ["n", "k", "edges", "algorithm", "seed", "micros", "work_units"]


def run_bench(
    ns: Sequence[int],
    ks: Iterable[int],
    algorithms: Sequence[str] = ("enum", "improve"),
    seed: int = 0,
) -> list[dict[str, int | str]]:
    from .enumeration import enumerate_solve
    from .improvement import improve_solve

    rows = []
    for n in ns:
        for k in ks:
            game = generate_game(bench_spec(n, k, seed))
            for algorithm in algorithms:
                start = time.perf_counter()
                if algorithm == "enum":
                    solution = enumerate_solve(game)
                    work = solution.stats["permutations"]
                elif algorithm == "improve":
                    solution, _ = improve_solve(game)
                    work = solution.stats["steps"]
                    if work > math.factorial(k):
                        raise AssertionError(f"{work} improvement steps exceed {k}!")
                else:
                    raise ValueError(f"unknown algorithm {algorithm!r}")
                micros = int((time.perf_counter() - start) * 1e6)
                rows.append({
                    "n": n, "k": k, "edges": game.edge_count, "algorithm": algorithm,
                    "seed": seed, "micros": micros, "work_units": work,
                })
    return rows


def bench_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
