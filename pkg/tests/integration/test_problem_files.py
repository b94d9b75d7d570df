"""The command line on the problem files in tests/fixtures."""

import json
from pathlib import Path

from typer.testing import CliRunner

from degloci.cli import EXIT_PARSE, app

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

runner = CliRunner()


def invoke(name, *args):
    return runner.invoke(app, ["--input", str(FIXTURES / name), *args])


def test_golden_file_json():
    result = invoke("golden.problem", "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["empty"] is False
    assert data["resolution"]["degree"] == 4
    assert data["report"]["strategy"] == "all-subsets"
    assert data["variables"] == ["X1", "X2", "X3"]


def test_golden_file_is_deterministic():
    first = invoke("golden.problem")
    second = invoke("golden.problem")
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    assert first.stdout.startswith("degree 4\nP = ")


def test_sphere_file():
    result = invoke("sphere.problem", "--precision", "6")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert "real points 2" in lines
    assert lines[-2].startswith("(") and lines[-1].startswith("(")


def test_fiber_file():
    result = invoke("fiber.problem")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "dominant yes"
    assert "degree 2" in lines


def test_member_task_on_golden_file():
    result = invoke("golden.problem", "--task", "member")
    assert result.exit_code == EXIT_PARSE
    assert "point" in result.output


def test_bad_file():
    result = invoke("bad.problem")
    assert result.exit_code == EXIT_PARSE
    assert "error: 4:" in result.output


def test_matrix_from_file(tmp_path):
    matrix = tmp_path / "a.txt"
    matrix.write_text("1 2 3\n2 1 3\n")
    result = invoke("sphere.problem", "--matrix-a", str(matrix), "--format", "json")
    assert result.exit_code == 0
    assert len(json.loads(result.stdout)["real_points"]) == 2


def test_small_working_prime_on_the_command_line():
    result = invoke("golden.problem", "--prime", "7", "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert 7 in data["report"]["rejected_primes"]
    assert data["resolution"]["degree"] == 4
