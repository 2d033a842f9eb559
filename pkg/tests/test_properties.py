"""Randomized cross-checks on generated games of varied shapes."""

from hypothesis import HealthCheck, given, settings, strategies as st

from permssg.enumeration import enumerate_solve
from permssg.game import Kind
from permssg.generate import GenSpec, generate_game
from permssg.improvement import improve_solve
from permssg.oracle import brute_force_values, verify_optimal
from permssg.qualitative import normalize_game

shapes = st.builds(
    GenSpec,
    n_max=st.integers(0, 3),
    n_min=st.integers(0, 3),
    n_random=st.integers(0, 4),
    min_degree=st.just(1),
    max_degree=st.integers(1, 3),
    max_denominator=st.integers(1, 6),
    terminal_prob=st.floats(0, 1),
    seed=st.integers(0, 2**64 - 1),
).filter(lambda spec: spec.max_degree <= spec.n_vertices)

common = settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@common
@given(shapes)
def test_solvers_match_oracle(spec):
    game = generate_game(spec)
    expected = brute_force_values(game)
    sol = enumerate_solve(game)
    assert sol.values == expected
    assert improve_solve(game)[0].values == expected
    assert verify_optimal(game, sol.max_strategy, sol.min_strategy)


@common
@given(shapes)
def test_normalization_idempotent(spec):
    image = normalize_game(generate_game(spec)).image
    assert normalize_game(image).is_identity()


@common
@given(shapes)
def test_values_in_unit_interval(spec):
    game = generate_game(spec)
    values = enumerate_solve(game).values
    assert all(0 <= x <= 1 for x in values)
    assert values[game.target] == 1
    if game.sink is not None:
        assert values[game.sink] == 0
    for v in game.vertices_of(Kind.MAX):
        assert values[v] == max(values[w] for w in game.edges[v])
    for v in game.vertices_of(Kind.MIN):
        assert values[v] == min(values[w] for w in game.edges[v])
