import itertools
import random

import pytest

from permssg.game import Kind
from permssg.generate import GenSpec, generate_game
from permssg.qualitative import normalize_game
from permssg.regions import (
    AttractorBuilder,
    NotNormalizedError,
    compute_f_regions,
    compute_f_strategies,
    deterministic_attractor,
    f_partition,
)


def ids(game, *names):
    return tuple(game.index[n] for n in names)


def region_names(game, partition):
    return [{game.names[v] for v in region} for region in partition.regions]


def test_attractor_g3_r1(games):
    g3 = games["G3"]
    m, r1, t = ids(g3, "m", "r1", "T")
    res = deterministic_attractor(g3, [r1, t])
    assert res.attractor == {r1, t, m}
    assert res.level[m] == 1
    assert res.attracting == {m: r1}


def test_attractor_g3_r2(games):
    g3 = games["G3"]
    r2, t = ids(g3, "r2", "T")
    res = deterministic_attractor(g3, [r2, t])
    assert res.attractor == {r2, t}
    assert res.trapping == {g3.index["u"]: g3.index["r1"]}


def test_attractor_g1(games):
    g1 = games["G1"]
    assert deterministic_attractor(g1, [g1.target]).attractor == {g1.target}


def test_regions_g3(games):
    g3 = games["G3"]
    p = compute_f_regions(g3, ids(g3, "r2", "r1"))
    assert region_names(g3, p) == [{"S"}, {"r2", "u"}, {"r1", "m"}, {"T"}]
    p = compute_f_regions(g3, ids(g3, "r1", "r2"))
    assert region_names(g3, p) == [{"S"}, {"r1", "m", "u"}, {"r2"}, {"T"}]


def test_regions_g1(games):
    g1 = games["G1"]
    p = compute_f_regions(g1, (0,))
    assert region_names(g1, p) == [{"S"}, {"r"}, {"T"}]
    assert p.rank == (1, 2, 0)


def test_strategies(games):
    g3 = games["G3"]
    m, u, r1, r2 = ids(g3, "m", "u", "r1", "r2")
    assert compute_f_strategies(g3, compute_f_regions(g3, (r2, r1))) == ({m: r1}, {u: r2})
    assert compute_f_strategies(g3, compute_f_regions(g3, (r1, r2))) == ({m: r1}, {u: r1})
    g2 = games["G2"]
    assert f_partition(g2, ids(g2, "r1", "r2")).max_strategy == {g2.index["m"]: g2.index["r2"]}


def test_requires_normalized(games):
    with pytest.raises(NotNormalizedError):
        compute_f_regions(games["G4"], (1,))
    with pytest.raises(NotNormalizedError):
        compute_f_regions(games["G5"], (2,))


def test_builder_increments_match_fresh(games):
    g3 = games["G3"]
    b = AttractorBuilder(g3)
    b.add([g3.target])
    added = b.add([g3.index["r1"]])
    fresh = deterministic_attractor(g3, [g3.target, g3.index["r1"]]).attractor
    assert set(added) | {g3.target} == fresh


def live_pairs(corpus):
    for seed, game in corpus:
        image = normalize_game(game).image
        for f in itertools.permutations(image.random_vertices):
            yield seed, image, f_partition(image, f)


def test_extension_properties(corpus):
    """Rank equalities and inequalities on every vertex and edge of every (game, permutation) pair."""
    for seed, g, p in live_pairs(corpus):
        rank, sigma, tau = p.rank, p.max_strategy, p.min_strategy
        for v in g.max_vertices:
            assert rank[sigma[v]] == rank[v], seed
            assert all(rank[w] <= rank[v] for w in g.edges[v]), seed
        for v in g.min_vertices:
            assert rank[tau[v]] == rank[v], seed
            assert all(rank[w] >= rank[v] for w in g.edges[v]), seed
        for i, r in enumerate(p.permutation, start=1):
            assert rank[r] == i, seed


def test_determinized_play(corpus):
    """Following the f-strategies from any vertex reaches the random or
    terminal vertex of its own region without revisiting a vertex."""
    for seed, g, p in live_pairs(corpus):
        choice = {**p.max_strategy, **p.min_strategy}
        for v in range(len(g)):
            seen = set()
            w = v
            while g.kinds[w].controlled:
                assert w not in seen, seed
                seen.add(w)
                w = choice[w]
            assert p.rank[w] == p.rank[v], seed
            assert w == ((g.sink,) + p.permutation + (g.target,))[p.rank[v]], seed


def test_attractor_monotone():
    rng = random.Random(3)

    for seed in range(200):
        g = generate_game(GenSpec(4, 4, 2, seed=seed))
        n = len(g)
        x = {v for v in range(n) if rng.random() < 0.3}
        y = x | {v for v in range(n) if rng.random() < 0.3}
        assert deterministic_attractor(g, x).attractor <= deterministic_attractor(g, y).attractor


def test_attractor_levels_consistent():
    for seed in range(100):
        g = generate_game(GenSpec(5, 5, 1, seed=seed))
        res = deterministic_attractor(g, [g.target])
        for v, lv in res.level.items():
            if lv == 0:
                continue
            succ = g.edges[v]
            if g.kinds[v] is Kind.MAX:
                assert res.level[res.attracting[v]] == lv - 1
            else:
                assert all(w in res.level and res.level[w] < lv for w in succ)
        for v, w in res.trapping.items():
            assert w not in res.attractor
