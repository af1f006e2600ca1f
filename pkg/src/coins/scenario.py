"""Scenario files: one JSON document describing a whole debugging session.

Schema (tag "coins-scenario/1"):

    {
      "schema": "coins-scenario/1",
      "k": 1,
      "variables": [{"name": "Ma", "domain": [1, 2, 3, 4]}, ...],
      "constraints": [
        {"name": "c1", "kind": "binary-neq", "scope": ["Ma", "Am"],
         "payload": null, "decision": false},
        ...
      ],
      "hierarchy": {
        "nodes": [{"id": "root", "label": "...", "parent": null}, ...],
        "constraints": {"c1": "nodeId", ...}
      },
      "views": {"michael": ["root", "before"], ...}
    }

Constraint scopes use variable names; the hierarchy maps constraint names to
node ids. `hierarchy` and `views` are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .hierarchy import Hierarchy, HierarchyNode, UserView, validate_hierarchy
from .model import Problem, build_problem, post_constraint

SCHEMA_TAG = "coins-scenario/1"


class ScenarioError(ValueError):
    """Raised on malformed scenario documents, with field context."""


@dataclass
class Scenario:
    problem: Problem
    hierarchy: Hierarchy | None
    views: dict[str, UserView] = field(default_factory=dict)
    raw: dict = field(default_factory=dict)


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ScenarioError(f"{where}: missing field '{key}'")
    return doc[key]


def parse_scenario(doc: dict, k_override: int | None = None) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario root must be a JSON object")
    tag = _require(doc, "schema", "scenario")
    if tag != SCHEMA_TAG:
        raise ScenarioError(f"unsupported schema tag: {tag!r} (expected {SCHEMA_TAG!r})")
    k = k_override if k_override is not None else _require(doc, "k", "scenario")
    if not isinstance(k, int):
        raise ScenarioError(f"scenario: k must be an integer, got {k!r}")

    var_docs = _require(doc, "variables", "scenario")
    try:
        problem = build_problem(
            [(v["name"], v["domain"]) for v in var_docs], k
        )
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"variables: malformed entry ({exc})") from exc

    name_to_index = {d.variable.name: d.variable.index for d in problem.variables}
    cid_by_name: dict[str, int] = {}
    for i, c in enumerate(doc.get("constraints", [])):
        where = f"constraints[{i}]"
        kind = _require(c, "kind", where)
        scope_names = _require(c, "scope", where)
        try:
            scope = [name_to_index[n] for n in scope_names]
        except KeyError as exc:
            raise ScenarioError(f"{where}: unknown variable {exc.args[0]!r}") from exc
        name = c.get("name", f"c{i}")
        if name in cid_by_name:
            raise ScenarioError(f"{where}: duplicate constraint name {name!r}")
        payload = c.get("payload")
        if kind == "binary-table" and payload is not None:
            payload = tuple(tuple(pair) for pair in payload)
        cid = post_constraint(
            problem,
            kind,
            scope,
            payload=payload,
            name=name,
            decision=bool(c.get("decision", False)),
        )
        cid_by_name[name] = cid.index

    hierarchy = None
    if "hierarchy" in doc and doc["hierarchy"] is not None:
        hdoc = doc["hierarchy"]
        nodes = {}
        for n in _require(hdoc, "nodes", "hierarchy"):
            node = HierarchyNode(n["id"], n["label"], n.get("parent"))
            if node.id in nodes:
                raise ScenarioError(f"hierarchy: duplicate node id {node.id!r}")
            nodes[node.id] = node
        leaf_of = {}
        for cname, nid in _require(hdoc, "constraints", "hierarchy").items():
            if cname not in cid_by_name:
                raise ScenarioError(f"hierarchy: unknown constraint name {cname!r}")
            leaf_of[cid_by_name[cname]] = nid
        hierarchy = Hierarchy(nodes=nodes, leaf_of=leaf_of)
        violations = validate_hierarchy(hierarchy, problem)
        if violations:
            raise ScenarioError("hierarchy: " + "; ".join(violations))

    views = {}
    for vname, node_ids in doc.get("views", {}).items():
        if hierarchy is None:
            raise ScenarioError(f"views: view {vname!r} given without a hierarchy")
        unknown = [nid for nid in node_ids if nid not in hierarchy.nodes]
        if unknown:
            raise ScenarioError(f"views[{vname}]: unknown nodes {unknown}")
        views[vname] = UserView(frozenset(node_ids))

    return Scenario(problem=problem, hierarchy=hierarchy, views=views, raw=doc)


def load_scenario_file(path: str | Path, k_override: int | None = None) -> Scenario:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_scenario(doc, k_override)
