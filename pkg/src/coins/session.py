"""Interactive session: one engine plus one hierarchy behind a command API.

Commands are plain dictionaries ({"op": ..., "args": {...}}) and every
command yields exactly one reply, so the whole session is replayable: the
scenario document plus the command log reconstruct the byte-identical reply
stream and state digest.
"""

from __future__ import annotations

import hashlib
import json
import uuid
from dataclasses import dataclass, field

from . import engine as eng
from . import whatif
from .conflict import DEFAULT_CAP, classical_conflict, enumerate_conflicts
from .hierarchy import UserView, project, project_conflicts
from .scenario import Scenario, load_scenario_file, parse_scenario


class CommandError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass
class Session:
    id: str
    scenario: Scenario
    state: eng.EngineState
    active_view: str | None = None
    log: list[dict] = field(default_factory=list)

    # ---- construction -----------------------------------------------------

    @classmethod
    def from_scenario(cls, scenario: Scenario) -> "Session":
        state = eng.new_engine(scenario.problem)
        eng.propagate(state)
        view = None
        if scenario.views:
            view = sorted(scenario.views)[0]
        return cls(id=uuid.uuid4().hex, scenario=scenario, state=state, active_view=view)

    # ---- helpers ----------------------------------------------------------

    def _var_index(self, name) -> int:
        for d in self.state.problem.variables:
            if d.variable.name == name:
                return d.variable.index
        raise CommandError("unknown-variable", f"unknown variable: {name}")

    def _constraint_index(self, name) -> int:
        for spec in self.state.problem.constraints:
            if spec.id.name == name:
                return spec.id.index
        raise CommandError("unknown-constraint", f"unknown constraint: {name}")

    def _names(self, indices) -> list[str]:
        cs = self.state.problem.constraints
        return [cs[i].id.name for i in sorted(indices)]

    def _explanations(self, es) -> list[list[str]]:
        return [self._names(e) for e in es]

    def _view(self) -> UserView:
        if self.scenario.hierarchy is None:
            raise CommandError("no-hierarchy", "scenario has no hierarchy")
        if self.active_view is None:
            raise CommandError("no-view", "no active view set")
        return self.scenario.views[self.active_view]

    def digest(self) -> str:
        payload = {
            "domains": eng.domains_snapshot(self.state),
            "store": self.state.store.dump(),
            "status": self.state.status,
            "active": sorted(self.state.problem.config.active),
            "relaxed": sorted(self.state.problem.config.relaxed),
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def _contradiction_or_error(self) -> int:
        if self.state.status != eng.CONTRADICTORY:
            raise CommandError("consistent", "engine is not contradictory")
        return self.state.contradiction.variable

    # ---- dispatch ---------------------------------------------------------

    def dispatch(self, cmd: dict) -> dict:
        self.log.append(cmd)
        op = cmd.get("op")
        args = cmd.get("args", {}) or {}
        handler = getattr(self, "_op_" + str(op).replace("-", "_"), None)
        if op is None or handler is None:
            return {"ok": False, "error": {"code": "unknown-op", "message": f"unknown op: {op!r}"}}
        try:
            result = handler(args)
        except CommandError as exc:
            return {"ok": False, "error": {"code": exc.code, "message": exc.message}}
        except (eng.EngineError, whatif.WhatIfError, ValueError) as exc:
            return {"ok": False, "error": {"code": "invalid", "message": str(exc)}}
        return {"ok": True, "result": result}

    # ---- query ops --------------------------------------------------------

    def _op_domains(self, args: dict) -> dict:
        return {
            "domains": eng.domains_snapshot(self.state),
            "status": self.state.status,
            "contradiction": (
                self.state.problem.variables[self.state.contradiction.variable].variable.name
                if self.state.contradiction
                else None
            ),
        }

    def _op_explain(self, args: dict) -> dict:
        var = self._var_index(args.get("variable"))
        value = int(args.get("value"))
        key = (var, value)
        main = self.state.store.main(key)
        return {
            "explanations": self._explanations(self.state.store.valid_explanations(key)),
            "main": self._names(main) if main is not None else None,
        }

    def _op_why_not(self, args: dict) -> dict:
        var = self._var_index(args.get("variable"))
        diag = whatif.why_not(self.state, var, int(args.get("value")))
        return {
            "present": diag.present,
            "explanations": self._explanations(diag.explanations),
            "main": self._names(diag.main) if diag.main is not None else None,
        }

    def _op_conflicts(self, args: dict) -> dict:
        var = self._contradiction_or_error()
        cap = int(args.get("cap", DEFAULT_CAP))
        cs = enumerate_conflicts(self.state, var, cap)
        return {
            "variable": self.state.problem.variables[var].variable.name,
            "conflicts": [self._names(cf.constraints) for cf in cs.conflicts],
            "raw_count": cs.raw_count,
            "truncated": cs.truncated,
        }

    def _op_classical_conflict(self, args: dict) -> dict:
        var = self._contradiction_or_error()
        cf = classical_conflict(self.state, var)
        return {
            "variable": self.state.problem.variables[var].variable.name,
            "conflict": self._names(cf.constraints),
        }

    def _op_simulate_relax(self, args: dict) -> dict:
        c = self._constraint_index(args.get("constraint"))
        report = whatif.simulate_relax(self.state, c)
        name = lambda key: self.state.problem.variables[key[0]].variable.name
        return {
            "constraint": args.get("constraint"),
            "would_restore": [
                {"variable": name(k), "value": k[1]} for k in report.would_restore
            ],
            "stays_removed": [
                {
                    "variable": name(k),
                    "value": k[1],
                    "survivors": self._explanations(es),
                }
                for k, es in sorted(report.stays_removed.items())
            ],
            "failure_persists": report.failure_persists,
        }

    def _op_simulate_add(self, args: dict) -> dict:
        c = self._constraint_index(args.get("constraint"))
        report = whatif.simulate_add(self.state, c)
        name = lambda key: self.state.problem.variables[key[0]].variable.name
        return {
            "constraint": args.get("constraint"),
            "predicted_removals": [
                {"variable": name(k), "value": k[1], "explanation": self._names(e)}
                for k, e in report.predicted_removals
            ],
            "predicted_failure": report.predicted_failure,
        }

    def _op_in_conflict(self, args: dict) -> dict:
        c = self._constraint_index(args.get("constraint"))
        cap = int(args.get("cap", DEFAULT_CAP))
        verdict, conflicts = whatif.in_conflict(self.state, c, cap)
        return {
            "constraint": args.get("constraint"),
            "in_conflict": verdict,
            "conflicts": [self._names(cf.constraints) for cf in conflicts],
        }

    def _op_stats(self, args: dict) -> dict:
        s = self.state.store.stats()
        return {
            "explanation_count": s.explanation_count,
            "per_bucket": s.per_bucket,
            "max_explanation_size": s.max_explanation_size,
            "record_count": s.record_count,
            "k": self.state.store.k,
            "status": self.state.status,
        }

    def _op_snapshot(self, args: dict) -> dict:
        rows = eng.full_snapshot(self.state)
        for row in rows:
            row["explanations"] = [
                self._names(e) for e in row["explanations"]
            ]
            if row["main"] is not None:
                row["main"] = self._names(row["main"])
        return {
            "rows": rows,
            "status": self.state.status,
            "active": self._names(self.state.problem.config.active),
            "relaxed": self._names(self.state.problem.config.relaxed),
            "digest": self.digest(),
        }

    # ---- projection ops ---------------------------------------------------

    def _op_set_view(self, args: dict) -> dict:
        name = args.get("view")
        if name not in self.scenario.views:
            raise CommandError("unknown-view", f"unknown view: {name!r}")
        self.active_view = name
        return {"view": name}

    def _op_project_explanation(self, args: dict) -> dict:
        var = self._var_index(args.get("variable"))
        value = int(args.get("value"))
        view = self._view()
        h = self.scenario.hierarchy
        es = self.state.store.valid_explanations((var, value))
        return {
            "projections": [sorted(project(h, view, e)) for e in es],
        }

    def _op_project(self, args: dict) -> dict:
        names = args.get("constraints") or []
        indices = [self._constraint_index(n) for n in names]
        view = self._view()
        return {"labels": project(self.scenario.hierarchy, view, indices)}

    def _op_project_conflicts(self, args: dict) -> dict:
        var = self._contradiction_or_error()
        cap = int(args.get("cap", DEFAULT_CAP))
        view = self._view()
        cs = enumerate_conflicts(self.state, var, cap)
        return {"projected": project_conflicts(self.scenario.hierarchy, view, cs)}

    # ---- mutation ops -----------------------------------------------------

    def _op_relax(self, args: dict) -> dict:
        c = self._constraint_index(args.get("constraint"))
        outcome = eng.relax(self.state, c)
        name = lambda key: self.state.problem.variables[key[0]].variable.name
        return {
            "restored": [{"variable": name(k), "value": k[1]} for k in outcome.restored],
            "re_removed": [{"variable": name(k), "value": k[1]} for k in outcome.re_removed],
            "status": outcome.status,
        }

    def _op_reactivate(self, args: dict) -> dict:
        c = self._constraint_index(args.get("constraint"))
        outcome = eng.reactivate(self.state, c)
        name = lambda key: self.state.problem.variables[key[0]].variable.name
        return {
            "removed": [{"variable": name(k), "value": k[1]} for k in outcome.removed],
            "status": outcome.status,
        }

    def _op_relax_node(self, args: dict) -> dict:
        if self.scenario.hierarchy is None:
            raise CommandError("no-hierarchy", "scenario has no hierarchy")
        node = args.get("node")
        h = self.scenario.hierarchy
        if node not in h.nodes:
            raise CommandError("unknown-node", f"unknown node: {node!r}")
        cs = h.constraints_under(node)
        decisions = [c for c in cs if self.state.problem.constraints[c].decision]
        if decisions:
            raise CommandError(
                "covers-decisions",
                f"node {node!r} covers decision constraints: {self._names(decisions)}",
            )
        relaxed = []
        for c in cs:
            if c in self.state.problem.config.active:
                eng.relax(self.state, c)
                relaxed.append(c)
        return {"relaxed": self._names(relaxed), "status": self.state.status}


def load_scenario(path, k_override: int | None = None) -> Session:
    return Session.from_scenario(load_scenario_file(path, k_override))


def session_from_doc(doc: dict, k_override: int | None = None) -> Session:
    return Session.from_scenario(parse_scenario(doc, k_override))


def replay(doc: dict, log: list[dict], k_override: int | None = None) -> tuple[Session, list[dict]]:
    """Rebuild a session from its scenario document and command log."""
    session = session_from_doc(doc, k_override)
    replies = [session.dispatch(cmd) for cmd in log]
    return session, replies
