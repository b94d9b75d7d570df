from fractions import Fraction

import pytest

from degloci.circuit import CircuitBuilder
from degloci.cli.problem_file import parse_matrix, parse_problem_file, task_name
from degloci.errors import ParseError

GOLDEN = """\
# golden example
vars X1 X2 X3
eq X1^2+X2^2+X3^2
ineq X1*X2*X3
F[1][1] = X1
F[1][2] = X1*X2+X2^2
F[1][3] = X1*X3
a 1 2 3
a 2 1 3
seed 7
"""


def test_golden_statements():
    problem = parse_problem_file(GOLDEN)
    assert problem.variables == ("X1", "X2", "X3")
    assert [e.text for e in problem.equations] == ["X1^2+X2^2+X3^2"]
    assert problem.inequation.text == "X1*X2*X3"
    assert [[e.text for e in row] for row in problem.matrix()] == [["X1", "X1*X2+X2^2", "X1*X3"]]
    assert problem.a == [(1, 2, 3), (2, 1, 3)]
    assert problem.task == "solve"
    assert problem.seed == 7


def test_semicolons_and_brackets():
    problem = parse_problem_file(
        "vars = X1, X2, X3;\n"
        "eq = X1^2+X2^2+X3^2;\n"
        "F[1][1] = X1\nF[1][2] = X2\nF[1][3] = X3\n"
        "a = [[1,2,3],[2,1,3]];\n"
        "task = degeneracy;\n"
    )
    assert problem.variables == ("X1", "X2", "X3")
    assert [e.text for e in problem.equations] == ["X1^2+X2^2+X3^2"]
    assert problem.a == [(1, 2, 3), (2, 1, 3)]
    assert problem.task == "solve"


def test_fractions_in_rows_and_points():
    problem = parse_problem_file("vars X1 X2\na 1/2, -3\npoint 1 0\nlevel 1\n")
    assert problem.a == [(Fraction(1, 2), Fraction(-3))]
    assert problem.point == (1, 0)
    assert problem.level == 1


def test_second_map():
    problem = parse_problem_file("vars X1\nF[1][1] = X1^2\nG[1] = 1\ntask homotopy\n")
    assert [e.text for e in problem.second_map()] == ["1"]
    assert problem.task == "homotopy"


def test_expression_positions_are_kept():
    problem = parse_problem_file("vars X1 X2\neq   X1 + $\n")
    (equation,) = problem.equations
    assert (equation.line, equation.column) == (2, 6)
    with pytest.raises(ParseError) as info:
        problem.parse_into(CircuitBuilder(2), equation)
    assert (info.value.line, info.value.column) == (2, 11)


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("vars X1\nfoo 1\n", 2, 1),
        ("vars X1\ntask nothing\n", 2, 6),
        ("vars X1\nseed 1 2\n", 2, 6),
        ("vars X1\na 1 x\n", 2, 5),
        ("vars X1\nF[0][1] = X1\n", 2, 1),
        ("vars X1\nF[1][1] = X1\nF[1][1] = X1\n", 3, 1),
        ("vars X1 X1\n", 1, 6),
        ("vars X1\na = 1]\n", 2, 5),
    ],
)
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_problem_file(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"{line}:{column}:")


def test_missing_vars():
    with pytest.raises(ParseError):
        parse_problem_file("# nothing here\n")


def test_missing_matrix_entry():
    problem = parse_problem_file("vars X1 X2\nF[1][1] = X1\nF[1][3] = X2\n")
    with pytest.raises(ParseError, match=r"F\[1\]\[2\]"):
        problem.matrix()


def test_task_aliases():
    assert task_name("degeneracy") == "solve"
    assert task_name("polar") == "polar"
    with pytest.raises(ParseError):
        task_name("sample")


def test_parse_matrix():
    assert parse_matrix("1 2 3\n# comment\n\n2, 1, 3\n") == ((1, 2, 3), (2, 1, 3))
