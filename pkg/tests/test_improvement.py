import math
from fractions import Fraction as F

import pytest

from permssg.enumeration import check_liveness, enumerate_solve
from permssg.game import Game, Kind
from permssg.improvement import (
    Converged,
    CycleDetected,
    improve_solve,
    improvement_step,
    naive_improve,
    restrict_game,
    solve_one_player,
    solve_one_player_min,
    strategy_value,
)
from permssg.io import read_game
from permssg.oracle import brute_force_values
from permssg.qualitative import normalize_game
from permssg.regions import compute_f_regions

from conftest import DATA


def named(game, values):
    return {game.names[v]: x for v, x in enumerate(values)}


def test_restrict(games):
    g3 = games["G3"]
    assert restrict_game(g3, {0: 2}).edges[0] == (2,)
    assert restrict_game(g3, {0: 1}).edges[0] == (1,)
    assert restrict_game(games["G1"], {}) == games["G1"]
    with pytest.raises(ValueError):
        restrict_game(g3, {0: 3})


def test_one_player_min(games):
    g3 = games["G3"]
    values, tau = solve_one_player_min(restrict_game(g3, {0: 2}))
    assert named(g3, values) == {"m": F(1, 2), "u": F(1, 4), "r1": F(1, 2), "r2": F(1, 4), "T": 1, "S": 0}
    assert tau == {1: 3}
    values, _ = solve_one_player_min(restrict_game(g3, {0: 1}))
    assert (values[0], values[1]) == (F(1, 4), F(1, 4))
    assert solve_one_player_min(games["G1"])[0][0] == F(1, 2)


def test_one_player_min_escapes_zero_cycle(games):
    # u may loop forever; Min must find that this is worth 0
    g5 = games["G5"]
    values, tau = solve_one_player_min(g5)
    assert values[g5.index["u"]] == 0
    assert tau == {g5.index["u"]: g5.index["u"]}


def test_one_player_max(games):
    g3 = games["G3"]
    values, sigma = solve_one_player(restrict_game(g3, {1: 2}, Kind.MIN), Kind.MAX)
    assert values[0] == F(1, 2)
    with pytest.raises(ValueError):
        solve_one_player(g3, Kind.MAX)


def test_strategy_value(games):
    assert strategy_value(games["G3"], {0: 1})[0] == F(1, 4)


def test_improvement_step(games):
    g3 = games["G3"]
    assert improvement_step(g3, (2, 3)) == (3, 2)
    assert improvement_step(g3, (3, 2)) == (3, 2)
    assert improvement_step(games["G1"], (0,)) == (0,)


def test_improve_g3(games):
    g3 = games["G3"]
    sol, trace = improve_solve(g3, (2, 3))
    assert trace.steps == 1 and sol.stats == {"steps": 1}
    assert sol.permutation == (3, 2)
    assert sol.values == enumerate_solve(g3).values
    sol, trace = improve_solve(g3, (3, 2))
    assert trace.steps == 0


def test_improve_g1(games):
    sol, trace = improve_solve(games["G1"])
    assert trace.steps == 0 and sol.values[0] == F(1, 2)


def test_improve_rejects_bad_f0(games):
    g3 = games["G3"]
    with pytest.raises(ValueError):
        improve_solve(g3, (2,))
    with pytest.raises(ValueError):
        improve_solve(g3, (0, 2))


def test_improve_rejects_non_live_f0():
    g = Game.build(
        [("a", "random"), ("b", "random"), ("T", "target"), ("S", "sink")],
        [("a", "b", F(1, 2)), ("a", "S", F(1, 2)), ("b", "T", F(1, 2)), ("b", "S", F(1, 2))],
    )
    with pytest.raises(ValueError, match="not live"):
        improve_solve(g, (1, 0))


def test_f0_in_original_ids(games):
    # r of G5 survives normalization, m and u do not; f0 uses the original index
    g5 = games["G5"]
    sol, _ = improve_solve(g5, (g5.index["r"],))
    assert sol.values[g5.index["r"]] == F(1, 2)


def test_naive_examples(games):
    g3 = games["G3"]
    out = naive_improve(g3, (2, 3), max_steps=4)
    assert isinstance(out, Converged) and out.steps == 1
    assert out.solution.values == brute_force_values(g3)
    out = naive_improve(g3, (3, 2), max_steps=4)
    assert isinstance(out, Converged) and out.steps == 0
    out = naive_improve(games["G1"], (0,), max_steps=1)
    assert isinstance(out, Converged) and out.steps == 0


def test_naive_outcomes_on_corpus(corpus):
    cycles = 0
    for seed, game in corpus:
        norm = normalize_game(game)
        image, preimage = norm.image, norm.preimage
        f0 = tuple(preimage[r] for r in improve_solve(game)[1].entries[0].permutation)
        k = len(f0)
        out = naive_improve(game, f0, max_steps=2 * math.factorial(k))
        if isinstance(out, Converged):
            assert out.solution.values == brute_force_values(game), seed
        else:
            assert isinstance(out, CycleDetected), seed
            assert all(check_liveness(image, compute_f_regions(image, f)) for f in out.cycle)
            cycles += 1
    assert cycles < len(corpus)


def test_naive_policy_oscillates():
    game = read_game(DATA / "naive_cycle.ssg")
    a, b, c = (game.index[x] for x in "abc")
    out = naive_improve(game, (a, c, b), max_steps=12)
    assert isinstance(out, CycleDetected)
    assert out.cycle == [(a, c, b), (b, a, c)]
    # the improvement policy escapes the same starting point in one step
    sol, trace = improve_solve(game, (a, c, b))
    assert trace.steps == 1
    assert sol.permutation == (a, b, c)
    assert sol.values == brute_force_values(game)
    assert enumerate_solve(game).permutation == (a, b, c)
