"""Exact solving of simple stochastic games by permutations of the random vertices."""

from .enumeration import enumerate_solve
from .game import Game, InvalidGameError, Kind, Solution, validate_game
from .improvement import improve_solve, naive_improve
from .io import export_dot, parse_game, read_game, write_game
from .oracle import brute_force_solve, brute_force_values, verify_optimal
from .qualitative import normalize_game

__all__ = [
    "Game",
    "InvalidGameError",
    "Kind",
    "Solution",
    "brute_force_solve",
    "brute_force_values",
    "enumerate_solve",
    "export_dot",
    "improve_solve",
    "naive_improve",
    "normalize_game",
    "parse_game",
    "read_game",
    "validate_game",
    "verify_optimal",
    "write_game",
]
