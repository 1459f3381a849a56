from __future__ import annotations

import json
from pathlib import Path

import pytest

from viewprop.cli import main

MODELS = Path(__file__).resolve().parents[1] / "models"


def test_check_single_suite(capsys):
    assert main(["check", "--suite", "lemmas", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("CHECK lemma:")
    assert " FAIL " not in out
    assert out.splitlines()[-1].endswith("fail=0 skip=0")


def test_check_is_deterministic(capsys):
    main(["check", "--suite", "lemmas", "--seed", "5", "--format", "json"])
    first = capsys.readouterr().out
    main(["check", "--suite", "lemmas", "--seed", "5", "--format", "json"])
    assert capsys.readouterr().out == first
    json.loads(first)


def test_check_out_file(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(["check", "--suite", "lemmas", "--format", "csv", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text().splitlines()[0].startswith("name")


@pytest.mark.slow
def test_table1_exits_one_on_the_witness(capsys):
    assert main(["check", "--suite", "table1"]) == 1
    assert "CHECK table1:witness:non-failed-fixpoint FAIL" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--suite", "nope"],
        ["check", "--budget", "0"],
        ["bench", str(MODELS / "eq20.mod"), "--reps", "0"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as e:
        code = main(argv)
        raise SystemExit(code)
    assert e.value.code == 2


def test_missing_model_exits_one(tmp_path, capsys):
    assert main(["model-run", str(tmp_path / "none.mod")]) == 1
    assert "error:" in capsys.readouterr().err


def test_bad_model_exits_one(tmp_path, capsys):
    p = tmp_path / "bad.mod"
    p.write_text("var int x 0 3\ncon max x x q\n")
    assert main(["model-run", str(p)]) == 1
    assert "line 2:" in capsys.readouterr().err


def test_model_run_outputs(tmp_path, capsys):
    assert main(["model-run", str(MODELS / "queens.mod"), "--n", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "SOLUTION q0=1 q1=3 q2=0 q3=2"
    assert lines[-1].startswith("STATS nodes=")
    p = tmp_path / "u.mod"
    p.write_text("var int x 0 3\nvar int y 0 3\ncon linear 9 1*x 1*y eq\nsolve all\n")
    main(["model-run", str(p)])
    assert capsys.readouterr().out.startswith("UNSAT")
    p.write_text("var int x 0 3\nvar int y 0 3\ncon linear 5 1*x 1*y eq\nsolve none\n")
    main(["model-run", str(p), "--mode", "decomposed"])
    assert capsys.readouterr().out.startswith("STORE x={2..3};y={2..3}")


def test_bench_png(tmp_path, capsys):
    out = tmp_path / "q.png"
    assert main(["bench", str(MODELS / "queens.mod"), "--n", "6", "--reps", "1", "--out", str(out)]) == 0
    assert "RELATIVE" in capsys.readouterr().out
    assert out.read_bytes()[:4] == b"\x89PNG"
