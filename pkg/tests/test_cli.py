import json
import shlex

import pytest
from typer.testing import CliRunner

from cli import app, run
from driver import MAX_DIV_TERMS_ENV
from setmeasure import measure_from_json, measure_text

runner = CliRunner()

RANK_ARGS = ["rank", "--scores", "2,0,1", "--label", "A", "--scores", "1,11,3", "--label", "B"]


def invoke(*args, **kwargs):
    kwargs.setdefault("env", {MAX_DIV_TERMS_ENV: None})
    return runner.invoke(app, list(args), **kwargs)


# Plain output is pinned byte for byte
@pytest.mark.parametrize("args, expected", [
    (["eval", "3*G^2 - (G - 1)"], "3*G^2 - G + 1\n"),
    (["eval", "-G + 1"], "-G + 1\n"),
    (["eval", "(G^2 - 1)/(G + 1)"], "G - 1\n"),
    (["--unicode", "eval", "G^2"], "①^2\n"),
    (["cmp", "2*G^2+1", "G^2+11*G+3"], ">\n"),
    (["cmp", "G - G", "0"], "=\n"),
    (["cmp", "G^-1", "1/1000000"], "<\n"),
    (["measure", "num[1,2)@10"], "10^G\n"),
    (["measure", "N \\ {3, 5, 10, 23, 114}"], "G - 5\n"),
    (["--unicode", "measure", "squares"], "⌊①^(1/2)⌋\n"),
    (["measure-cmp", "num[1,2)@10", "num[1,2)@2"], ">\n"),
    (["measure-cmp", "num[1,2]@2", "num[1,2)@2"], ">\n"),
    (RANK_ARGS, "1. A  2*G^2 + 1\n2. B  G^2 + 11*G + 3\n"),
    (["rank", "--method", "binary", "--scores", "1,11,3", "--scores", "2,0,1"],
     "1. 2  0.11001\n2. 1  0.10111111111110111\n"),
    (["parts", "3*G^2 - G + 1 + 2/G"],
     "value: 3*G^2 - G + 1 + 2*G^(-1)\ninfinite: 3*G^2 - G\nfinite: 1\ninfinitesimal: 2*G^(-1)\nclass: infinite\n"),
])
def test_plain_output(args, expected):
    result = invoke(*args)
    assert result.exit_code == 0, result.stderr
    assert result.stdout == expected


def test_table():
    result = invoke("table")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert len(lines) == 18
    assert lines[0] == "the set of natural numbers N | countable, aleph_0 | G"
    assert lines[-1] == "numbers in [0,2) expressible in decimal | continuum, c | 2*10^G"


def test_json_output():
    assert json.loads(invoke("--json", "eval", "3*G^2 - (G - 1)").stdout) == {"value": "3*G^2 - G + 1"}
    assert json.loads(invoke("--json", "cmp", "G", "1").stdout) == {"ordering": ">"}
    parts = json.loads(invoke("--json", "parts", "G + 1").stdout)
    assert parts == {"value": "G + 1", "infinite": "G", "finite": "1", "infinitesimal": "0", "class": "infinite"}


def test_json_measure_round_trips():
    obj = json.loads(invoke("--json", "measure", "num[1,2]@2").stdout)
    assert measure_from_json(obj) == measure_text("num[1,2]@2")
    rows = json.loads(invoke("--json", "table").stdout)
    assert [measure_from_json(row["measure"]).to_text() for row in rows][:3] == ["G", "G - 5", "1/2*G"]


def test_json_rank():
    obj = json.loads(invoke("--json", *RANK_ARGS[:1], "--method", "binary", *RANK_ARGS[1:]).stdout)
    assert obj == {
        "method": "binary",
        "leaderboard": [
            {"position": 1, "label": "A", "scores": [2, 0, 1], "rank": {"bits": "11001", "bit_length": 5}},
            {"position": 2, "label": "B", "scores": [1, 11, 3], "rank": {"bits": "10111111111110111", "bit_length": 17}},
        ],
    }


def test_domain_error_exit_code():
    result = invoke("eval", "2*G^2 + + 1")
    assert result.exit_code == 1
    assert result.stdout == ""
    assert result.stderr.startswith("SyntaxError: unexpected '+' at position 8")


def test_truncated_division_budget():
    result = invoke("--max-div-terms", "3", "eval", "1/(G+1)")
    assert result.exit_code == 1
    assert result.stderr == (
        "InexactDivision: quotient not exact after 3 terms "
        "(partial quotient G^(-1) - G^(-2) + G^(-3), remainder -G^(-3))\n"
    )
    from_env = invoke("eval", "1/(G+1)", env={MAX_DIV_TERMS_ENV: "3"})
    assert from_env.exit_code == 1
    assert "after 3 terms" in from_env.stderr


@pytest.mark.parametrize("args", [
    ["rank", "--scores", "2,0,1", "--label", "A", "--label", "B"],
    ["rank", "--scores", "1,x"],
    ["rank", "--scores", "1/0,1"],
    ["rank", "--method", "median", "--scores", "1"],
    ["rank"],
    ["--max-div-terms", "0", "eval", "G"],
    ["cmp", "G"],
    ["frobnicate"],
])
def test_usage_errors(args):
    assert invoke(*args).exit_code == 2


def test_bad_environment_budget_is_a_usage_error():
    assert invoke("eval", "G", env={MAX_DIV_TERMS_ENV: "lots"}).exit_code == 2


def test_results_longer_than_the_default_digit_limit():
    result = invoke("eval", "2^20000")
    assert result.exit_code == 0
    assert result.stdout == f"{2 ** 20000}\n"
    assert invoke("cmp", "1" * 5000, "G").stdout == "<\n"


def test_huge_exponents_compare_without_expanding():
    assert invoke("measure-cmp", "P(N(1,100000000))", "num[0,1)@3").stdout == "<\n"


@pytest.mark.parametrize("verb", ["measure", "measure-cmp"])
def test_deeply_nested_set_is_a_domain_error(verb):
    nested = "(" * 2000 + "N" + ")" * 2000
    args = [verb, nested] if verb == "measure" else [verb, nested, "N"]
    result = invoke(*args)
    assert result.exit_code == 1
    assert result.stderr.startswith("SyntaxError: set nested too deeply")


def test_oversized_power_is_a_domain_error():
    result = invoke("eval", "(G+1)^100000")
    assert result.exit_code == 1
    assert result.stderr.startswith("NotRepresentable:")


def test_rank_dimension_mismatch_is_a_domain_error():
    result = invoke("rank", "--scores", "1,2", "--scores", "1,2,3")
    assert result.exit_code == 1
    assert result.stderr.startswith("DimensionMismatch:")


def test_repl_matches_one_shot_mode():
    lines = [
        'eval "3*G^2 - (G - 1)"',
        'cmp "2*G^2+1" "G^2+11*G+3"',
        'measure "num[1,2)@10"',
        "rank --scores 2,0,1 --label A --scores 1,11,3 --label B",
        'eval "-G"',
    ]
    result = invoke("repl", input="\n".join(lines) + "\nquit\neval G\n")
    assert result.exit_code == 0
    expected = "".join(invoke(*shlex.split(line)).stdout for line in lines)
    assert result.stdout == expected


def test_repl_keeps_going_after_errors():
    result = invoke("repl", input="eval 1/0\n\n# comment\nfrobnicate\nrank --scores\nhelp\neval G\n")
    assert result.exit_code == 0
    assert result.stdout.splitlines() == [
        "verbs: eval, cmp, parts, measure, measure-cmp, rank, table; quit or exit to leave",
        "G",
    ]
    assert "DivisionByZero: division by zero" in result.stderr
    assert "UsageError: unknown verb 'frobnicate'" in result.stderr


def test_batch(tmp_path):
    path = tmp_path / "lines.txt"
    path.write_text("\n".join([
        "# medal table",
        'cmp "2*G^2+1" "G^2+11*G+3"',
        "eval 1/0",
        'measure "E | O"',
        "rank --method binary --scores 2,0,1 --scores 1,11,3",
        "eval G+1",
    ]))
    result = invoke("batch", str(path))
    assert result.exit_code == 1
    assert result.stdout == ">\nG\n1. 1  0.11001\n2. 2  0.10111111111110111\nG + 1\n"
    assert "DivisionByZero: division by zero\n" in result.stderr


def test_batch_reports_malformed_lines(tmp_path):
    path = tmp_path / "lines.txt"
    path.write_text("eval G\nrank --method median --scores 1\n")
    result = invoke("batch", str(path))
    assert result.exit_code == 1
    assert result.stdout == "G\n"
    assert result.stderr.startswith("UsageError:")


def test_run_returns_exit_codes(capsys, monkeypatch):
    monkeypatch.delenv(MAX_DIV_TERMS_ENV, raising=False)
    assert run(["cmp", "G", "1"]) == 0
    assert capsys.readouterr().out == ">\n"
    assert run(["eval", "1/0"]) == 1
    assert "DivisionByZero" in capsys.readouterr().err
    assert run(["rank"]) == 2
    assert run(["eval", "2^20000"]) == 0
    assert capsys.readouterr().out == f"{2 ** 20000}\n"
