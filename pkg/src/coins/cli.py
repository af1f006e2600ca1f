"""Command-line entry points.

`repl` speaks newline-delimited JSON on stdin/stdout, either against an
in-process session or as a thin client of a running server (--connect).
`serve` exposes the same sessions over HTTP for the browser client.
"""

from __future__ import annotations

import json
import sys

import click

from .oracle import count_solutions
from .scenario import ScenarioError, load_scenario_file
from .session import load_scenario


@click.group()
def main():
    """Explanation-aware constraint solving sessions."""


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    sys.stdout.flush()


@main.command()
@click.option("--scenario", "scenario_path", required=True, type=click.Path(exists=True))
@click.option("--k", type=int, default=None, help="Override the scenario's relevance bound.")
@click.option("--connect", default=None, help="Forward commands to a running server URL.")
def repl(scenario_path, k, connect):
    """Line-delimited JSON command loop: one command in, one reply out."""
    if connect:
        import httpx

        doc = json.loads(open(scenario_path).read())
        created = httpx.post(
            f"{connect}/sessions", json={"scenario": doc, "k": k}
        ).raise_for_status().json()
        session_id = created["session_id"]
        _emit({"ok": True, "result": {"session": session_id, "status": created["status"]}})
        for line in sys.stdin:
            line = line.strip()
            if not line:
                continue
            if line in ("quit", "exit"):
                break
            try:
                cmd = json.loads(line)
            except json.JSONDecodeError as exc:
                _emit({"ok": False, "error": {"code": "parse", "message": str(exc)}})
                continue
            reply = httpx.post(
                f"{connect}/sessions/{session_id}/command", json=cmd
            ).raise_for_status().json()
            _emit(reply)
        return

    try:
        session = load_scenario(scenario_path, k)
    except ScenarioError as exc:
        _emit({"ok": False, "error": {"code": "scenario", "message": str(exc)}})
        raise SystemExit(1)
    _emit({"ok": True, "result": {"session": session.id, "status": session.state.status}})
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        if line in ("quit", "exit"):
            break
        try:
            cmd = json.loads(line)
        except json.JSONDecodeError as exc:
            _emit({"ok": False, "error": {"code": "parse", "message": str(exc)}})
            continue
        _emit(session.dispatch(cmd))


@main.command()
@click.option("--scenario", "scenario_path", required=True, type=click.Path(exists=True))
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
@click.option("--k", type=int, default=None)
def serve(scenario_path, port, host, k):
    """Serve sessions over HTTP; the scenario becomes the server default."""
    import uvicorn

    from .api import create_app

    doc = json.loads(open(scenario_path).read())
    if k is not None:
        doc = {**doc, "k": k}
    load_scenario_file(scenario_path, k)  # fail fast on bad scenarios
    uvicorn.run(create_app(doc), host=host, port=port, log_level="warning")


@main.command()
@click.argument("scenario_path", type=click.Path(exists=True))
def check(scenario_path):
    """Validate a scenario file."""
    try:
        scenario = load_scenario_file(scenario_path)
    except ScenarioError as exc:
        click.echo(f"INVALID: {exc}")
        raise SystemExit(1)
    p = scenario.problem
    click.echo(
        f"OK: {len(p.variables)} variables, {len(p.constraints)} constraints, "
        f"k={p.k}, hierarchy={'yes' if scenario.hierarchy else 'no'}, "
        f"views={sorted(scenario.views)}"
    )


@main.command()
@click.argument("scenario_path", type=click.Path(exists=True))
def oracle(scenario_path):
    """Brute-force solve a scenario and print the solution count."""
    scenario = load_scenario_file(scenario_path)
    n = count_solutions(scenario.problem)
    click.echo(f"solutions: {n}")
    raise SystemExit(0 if n > 0 else 2)


if __name__ == "__main__":
    main()
