from __future__ import annotations

from pathlib import Path

import pytest

from permssg.generate import corpus_spec, generate_game
from permssg.io import read_game

DATA = Path(__file__).parent / "data"
FIXTURES = {
    "G1": "g1_coin.ssg",
    "G2": "g2_choice.ssg",
    "G3": "g3_minmax.ssg",
    "G4": "g4_sure.ssg",
    "G5": "g5_dead.ssg",
}
CORPUS_SEEDS = range(600)

_criteria: dict[int, tuple[str, str]] = {}


def load(name: str):
    return read_game(DATA / FIXTURES[name])


@pytest.fixture(scope="session")
def games():
    return {name: load(name) for name in FIXTURES}


@pytest.fixture(scope="session")
def corpus():
    return [(seed, generate_game(corpus_spec(seed))) for seed in CORPUS_SEEDS]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _criteria[number] = ("PASS" if report.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}")
