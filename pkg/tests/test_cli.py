import io
import subprocess
import sys

from permssg.cli import main
from permssg.io import parse_game

from conftest import DATA

G3 = str(DATA / "g3_minmax.ssg")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def value_lines(report):
    return [line for line in report.splitlines() if line.startswith("value ")]


def test_solve_enum(capsys):
    code, out, _ = run(capsys, "solve", "--input", G3)
    assert code == 0
    lines = out.splitlines()
    assert "value m 1/2" in lines
    assert "permutation r2 r1" in lines
    assert "max-strategy m r1" in lines
    assert "min-strategy u r2" in lines
    assert lines[-1] == "stats permutations=2"


def test_solvers_agree(capsys):
    reports = {}
    for algorithm in ("enum", "improve", "oracle"):
        code, out, _ = run(capsys, "solve", G3, "--algorithm", algorithm, "--stats")
        assert code == 0
        reports[algorithm] = out
    assert value_lines(reports["enum"]) == value_lines(reports["improve"]) == value_lines(reports["oracle"])
    assert reports["improve"].splitlines()[-1] == "stats steps=0"


def test_bad_probabilities_cite_line(capsys, tmp_path):
    bad = tmp_path / "bad.ssg"
    bad.write_text("vertex r random\nvertex T target\nvertex S sink\nedge r T p=1/2\nedge r S p=1/3\n")
    code, out, err = run(capsys, "solve", str(bad))
    assert code != 0
    assert "line 4" in err
    assert out == ""


def test_syntax_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.ssg"
    bad.write_text("vertex r random\nedge r\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 1 and "line 2" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "solve", str(tmp_path / "nope.ssg"))
    assert code == 1 and "cannot read" in err


def test_output_and_dot_files(capsys, tmp_path):
    report, dot = tmp_path / "out.txt", tmp_path / "g.dot"
    code, out, _ = run(capsys, "solve", G3, "-o", str(report), "--emit-dot", str(dot))
    assert code == 0 and out == ""
    assert "value u 1/4" in report.read_text()
    assert '"m" -> "r1" [color=red, penwidth=2];' in dot.read_text()


def test_check(capsys):
    code, out, _ = run(capsys, "check", G3)
    assert code == 0 and out.startswith("ok vertices=6 edges=8")


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", str(DATA / "g5_dead.ssg"))
    assert code == 0
    image = parse_game(out)
    assert image.names == ("r", "T", "S")


def test_generate_deterministic(capsys, tmp_path):
    _, first, _ = run(capsys, "generate", "--seed", "7")
    _, second, _ = run(capsys, "generate", "--seed", "7")
    assert first == second
    parse_game(first)
    code, _, err = run(capsys, "generate", "--min-degree", "5", "--max-degree", "2")
    assert code == 1 and "degree" in err


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", "200", "--k", "1-3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,k,edges,algorithm,seed,micros,work_units"
    assert len(lines) == 1 + 6


def test_export(capsys):
    code, out, _ = run(capsys, "export", G3)
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "export", G3, "--solve", "oracle")
    assert "color=red" in out


def test_input_twice(capsys):
    code, _, _ = run(capsys, "solve", G3, "--input", G3)
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "permssg", "solve", G3], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "value m 1/2" in proc.stdout


def test_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO((DATA / "g1_coin.ssg").read_text()))
    code, out, _ = run(capsys, "solve")
    assert code == 0 and "value r 1/2" in out
