"""Line-oriented text format for games, plus DOT export.

Grammar, one directive per line, ``#`` starts a comment::

    vertex <name> max|min|random|target|sink
    edge <from> <to> [p=<num>/<den>]

``p=`` is required exactly on edges leaving random vertices.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from .game import Game, InvalidGameError, Kind, Violation, format_fraction, validate_game

_PROB = re.compile(r"p=(\d+)/(\d+)")


class GameSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class GameFormatError(InvalidGameError):
    """Semantic violations, each prefixed with the line that introduced it."""

    def __init__(self, violations: Sequence[Violation], lines: Mapping[int, int]):
        self.lines = dict(lines)
        super().__init__(violations)
        self.args = ("; ".join(
            f"line {lines[v.vertex]}: {v.reason}" if v.vertex in lines else v.reason
            for v in violations
        ),)


def parse_game(text: str) -> Game:
    """Parse and validate a game; raises :class:`GameSyntaxError` or :class:`GameFormatError`."""
    vertices: list[tuple[str, Kind]] = []
    index: dict[str, int] = {}
    decl_line: dict[int, int] = {}
    pending_edges: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        directive = tokens[0]
        if directive == "vertex":
            if len(tokens) != 3:
                raise GameSyntaxError(lineno, "expected 'vertex <name> <kind>'")
            name, kind_text = tokens[1], tokens[2]
            try:
                kind = Kind(kind_text)
            except ValueError:
                raise GameSyntaxError(lineno, f"unknown vertex kind {kind_text!r}") from None
            if name in index:
                raise GameSyntaxError(lineno, f"duplicate vertex {name!r}")
            index[name] = len(vertices)
            decl_line[len(vertices)] = lineno
            vertices.append((name, kind))
        elif directive == "edge":
            if len(tokens) not in (3, 4):
                raise GameSyntaxError(lineno, "expected 'edge <from> <to> [p=<num>/<den>]'")
            pending_edges.append((lineno, tokens))
        else:
            raise GameSyntaxError(lineno, f"unknown directive {directive!r}")

    succ: list[list[int]] = [[] for _ in vertices]
    dist: dict[int, dict[int, Fraction]] = {
        v: {} for v, (_, kind) in enumerate(vertices) if kind is Kind.RANDOM
    }
    first_edge_line: dict[int, int] = {}
    for lineno, tokens in pending_edges:
        src, dst = tokens[1], tokens[2]
        for name in (src, dst):
            if name not in index:
                raise GameSyntaxError(lineno, f"undeclared vertex {name!r}")
        v, w = index[src], index[dst]
        if w in succ[v]:
            raise GameSyntaxError(lineno, f"duplicate edge {src} -> {dst}")
        is_random = vertices[v][1] is Kind.RANDOM
        if len(tokens) == 4:
            if not is_random:
                raise GameSyntaxError(lineno, f"probability on edge from non-random vertex {src!r}")
            m = _PROB.fullmatch(tokens[3])
            if m is None:
                raise GameSyntaxError(lineno, f"malformed probability {tokens[3]!r}")
            num, den = int(m.group(1)), int(m.group(2))
            if den == 0:
                raise GameSyntaxError(lineno, "probability denominator must be positive")
            dist[v][w] = Fraction(num, den)
        elif is_random:
            raise GameSyntaxError(lineno, "random vertex edge missing probability")
        succ[v].append(w)
        first_edge_line.setdefault(v, lineno)

    game = Game(
        names=tuple(name for name, _ in vertices),
        kinds=tuple(kind for _, kind in vertices),
        edges=tuple(tuple(sorted(s)) for s in succ),
        dist=dist,
    )
    problems = validate_game(game)
    if problems:
        lines = {**decl_line, **first_edge_line}
        raise GameFormatError(problems, lines)
    return game


def read_game(path) -> Game:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def write_game(game: Game) -> str:
    """Canonical text: vertices in index order, edges by source then successor index."""
    lines = [f"vertex {name} {kind.value}" for name, kind in zip(game.names, game.kinds)]
    for v, succ in enumerate(game.edges):
        for w in succ:
            line = f"edge {game.names[v]} {game.names[w]}"
            if game.kinds[v] is Kind.RANDOM:
                line += f" p={format_fraction(game.dist[v][w])}"
            lines.append(line)
    return "\n".join(lines) + "\n"


_SHAPES = {
    Kind.MAX: "circle",
    Kind.MIN: "square",
    Kind.RANDOM: "triangle",
    Kind.TARGET: "doublecircle",
    Kind.SINK: "doublecircle",
}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(
    game: Game,
    values: Sequence[Fraction] | Mapping[int, Fraction] | None = None,
    strategies: Sequence[Mapping[int, int]] = (),
    ranks: Sequence[int] | Mapping[int, int] | None = None,
) -> str:
    """Render ``game`` as a DOT digraph.

    Optional annotations: per-vertex ``values``, any number of positional
    ``strategies`` (their edges are drawn bold red), and per-vertex region
    ``ranks``. Empty annotations render exactly like absent ones.
    """
    n = len(game)
    value_map = _as_mapping(values, n, "value")
    rank_map = _as_mapping(ranks, n, "rank")
    chosen: set[tuple[int, int]] = set()
    for strategy in strategies:
        for v, w in strategy.items():
            if not 0 <= v < n or w not in game.edges[v]:
                raise ValueError(f"strategy entry {v} -> {w} is not an edge of the game")
            chosen.add((v, w))

    out = ["digraph ssg {"]
    for v, (name, kind) in enumerate(zip(game.names, game.kinds)):
        label = name
        if v in value_map:
            label += f"\\n{format_fraction(value_map[v])}"
        if v in rank_map:
            label += f"\\nW{rank_map[v]}"
        out.append(f"  {_quote(name)} [shape={_SHAPES[kind]}, label={_quote(label)}];")
    for v, succ in enumerate(game.edges):
        for w in succ:
            attrs = []
            if game.kinds[v] is Kind.RANDOM:
                attrs.append(f"label={_quote(format_fraction(game.dist[v][w]))}")
            if (v, w) in chosen:
                attrs.append("color=red, penwidth=2")
            suffix = f" [{', '.join(attrs)}]" if attrs else ""
            out.append(f"  {_quote(game.names[v])} -> {_quote(game.names[w])}{suffix};")
    out.append("}")
    return "\n".join(out) + "\n"


def _as_mapping(data, n: int, what: str) -> dict[int, object]:
    if data is None:
        return {}
    items = data.items() if isinstance(data, Mapping) else enumerate(data)
    mapping = dict(items)
    for v in mapping:
        if not (isinstance(v, int) and 0 <= v < n):
            raise ValueError(f"{what} annotation references unknown vertex {v!r}")
    return mapping
