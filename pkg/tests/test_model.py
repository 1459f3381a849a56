from __future__ import annotations

from pathlib import Path

import pytest

from viewprop.errors import ModelError
from viewprop.model import load_model, parse_model
from viewprop.search import solve

MODELS = Path(__file__).resolve().parents[1] / "models"


def run(text, mode="derived", n=None):
    m = parse_model(text, n)
    store, props = m.compile(mode)
    limit = {"none": 0, "first": 1, "all": None}[m.solve]
    return m, solve(store, props, m.variables, limit=limit, search=limit != 0)


def test_grammar_covers_every_line_kind():
    text = """
    # comment
    var int x 0 5
    var int y 0 5
    var int z 0 5
    var bool a
    var bool b
    var bool c
    var set s of 1..3
    var set t of 1..3
    var set u of 1..3
    con linear 5 1*x 2*y eq
    con linear 3 1*x -1*z neq
    con distinct 0+x 1+y
    con max x y z
    con element e idx x +1 val y of 3,2,2,0,1,4
    con or a b = c
    con card geq 1 a b
    con card leq 1 a b
    con intersect s t u
    con member x s
    solve all
    """
    for mode in ("derived", "decomposed"):
        m, res = run(text, mode)
        assert len(m.constraints) == 10
        assert res.solutions
        for sol in res.solutions:
            x, y, z = sol[m.variables[0]], sol[m.variables[1]], sol[m.variables[2]]
            assert x + 2 * y == 5 and x - z != 3 and x != y + 1 and max(x, y) == z
            assert x in sol[m.variables[6]]
            assert sol[m.variables[3]] + sol[m.variables[4]] == 1


def test_modes_agree_on_solutions():
    text = "var int x 0 4\nvar int y 0 4\ncon linear 4 1*x 1*y eq\ncon distinct 0+x 0+y\nsolve all\n"
    assert run(text, "derived")[1].solutions == run(text, "decomposed")[1].solutions


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("var int x 0 3\nvar int x 0 3\n", 2, "declared twice"),
        ("var int x 3 0\n", 1, "empty domain"),
        ("var int x 0 3\ncon max x y x\n", 2, "unknown variable"),
        ("var int x 0 3\ncon frob x\n", 2, "unknown constraint"),
        ("var int x 0 3\ncon linear 1 2x eq\n", 2, "<coef>*<name>"),
        ("var int x 0 3\nsolve all\nsolve first\n", 3, "second solve"),
        ("var set s of 1..3\ncon max s s s\n", 2, "expected int"),
        ("var bool b\ncon card geq 3 b\n", 2, "outside"),
        ("\n\nbogus\n", 3, "unexpected"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ModelError) as e:
        parse_model(text)
    assert e.value.line == line
    assert fragment in str(e.value)
    assert str(e.value).startswith(f"line {line}: ")


def test_template_needs_defined_names():
    with pytest.raises(ModelError):
        parse_model("{% for i in range(m) %}var int x{{ i }} 0 1\n{% endfor %}")


def test_four_queens_has_two_solutions():
    m = load_model(MODELS / "queens.mod", 4)
    m.solve = "all"
    store, props = m.compile("derived")
    res = solve(store, props, m.variables)
    cols = sorted(tuple(s[v] for v in m.variables) for s in res.solutions)
    assert cols == [(1, 3, 0, 2), (2, 0, 3, 1)]


def test_eight_queens_count():
    m = load_model(MODELS / "queens.mod", 8)
    store, props = m.compile("derived")
    assert len(solve(store, props, m.variables).solutions) == 92


def test_unsat():
    _, res = run("var int x 0 3\nvar int y 0 3\ncon linear 9 1*x 1*y eq\nsolve all\n")
    assert res.root_failed and not res.solutions


def test_shipped_models_parse():
    eq = load_model(MODELS / "eq20.mod")
    assert len(eq.variables) == 7 and len(eq.constraints) == 20
    store, props = eq.compile("derived")
    res = solve(store, props, eq.variables)
    assert [[s[v] for v in eq.variables] for s in res.solutions] == [[1, 4, 6, 6, 6, 3, 1]]
    alpha = load_model(MODELS / "alpha.mod")
    assert len(alpha.variables) == 26
