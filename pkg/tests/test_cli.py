import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from coins.cli import main

SCENARIO = Path(__file__).resolve().parent.parent / "scenarios" / "conference.json"


@pytest.fixture
def runner():
    return CliRunner()


def test_check_valid(runner):
    result = runner.invoke(main, ["check", str(SCENARIO)])
    assert result.exit_code == 0
    assert result.output.startswith("OK: 4 variables, 14 constraints, k=1")


def test_check_invalid(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "wrong"}')
    result = runner.invoke(main, ["check", str(bad)])
    assert result.exit_code == 1
    assert result.output.startswith("INVALID:")


def test_oracle_reports_zero_solutions(runner):
    result = runner.invoke(main, ["oracle", str(SCENARIO)])
    assert result.exit_code == 2
    assert result.output.strip() == "solutions: 0"


def test_oracle_reports_solutions(runner, tmp_path):
    doc = {
        "schema": "coins-scenario/1",
        "k": 1,
        "variables": [{"name": "x", "domain": [1, 2]}],
        "constraints": [{"name": "ban", "kind": "unary-neq", "scope": ["x"], "payload": 1}],
    }
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(doc))
    result = runner.invoke(main, ["oracle", str(path)])
    assert result.exit_code == 0
    assert result.output.strip() == "solutions: 1"


def test_repl_command_loop(runner):
    lines = "\n".join(
        [
            json.dumps({"op": "domains"}),
            json.dumps({"op": "classical-conflict"}),
            "not json",
            "quit",
        ]
    )
    result = runner.invoke(main, ["repl", "--scenario", str(SCENARIO)], input=lines)
    assert result.exit_code == 0
    replies = [json.loads(line) for line in result.output.strip().splitlines()]
    assert replies[0]["ok"] and replies[0]["result"]["status"] == "contradictory"
    assert replies[1]["ok"]
    assert replies[2]["ok"]
    assert not replies[3]["ok"] and replies[3]["error"]["code"] == "parse"


def test_repl_is_deterministic_across_runs(runner):
    lines = "\n".join(
        [
            json.dumps({"op": "conflicts"}),
            json.dumps({"op": "relax", "args": {"constraint": "c6"}}),
            json.dumps({"op": "snapshot"}),
        ]
    )

    def run():
        result = runner.invoke(main, ["repl", "--scenario", str(SCENARIO)], input=lines)
        assert result.exit_code == 0
        replies = [json.loads(l) for l in result.output.strip().splitlines()]
        # The banner carries a fresh session id; everything after must match.
        return replies[1:]

    assert run() == run()
