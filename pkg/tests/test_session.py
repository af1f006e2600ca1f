import copy
import json

from coins.session import replay, session_from_doc


def ok(reply):
    assert reply["ok"], reply
    return reply["result"]


def err(reply):
    assert not reply["ok"], reply
    return reply["error"]["code"]


def test_domains_reports_contradiction(conference_session):
    result = ok(conference_session.dispatch({"op": "domains"}))
    assert result["status"] == "contradictory"
    assert result["contradiction"] in result["domains"]
    assert result["domains"][result["contradiction"]] == []


def test_explain_and_why_not_use_constraint_names(conference_session):
    s = conference_session
    var = s.state.problem.variables[s.state.contradiction.variable].variable.name
    result = ok(s.dispatch({"op": "explain", "args": {"variable": var, "value": 4}}))
    assert result["main"], "removed value must carry a main explanation"
    assert all(isinstance(n, str) and n.startswith("c") for n in result["main"])
    result2 = ok(s.dispatch({"op": "why-not", "args": {"variable": var, "value": 4}}))
    assert result2["present"] is False
    assert result2["main"] == result["main"]


def test_conflicts_and_classical(conference_session):
    s = conference_session
    result = ok(s.dispatch({"op": "conflicts"}))
    assert result["raw_count"] >= 1
    assert result["conflicts"]
    classical = ok(s.dispatch({"op": "classical-conflict"}))
    # The classical conflict is one of the raw unions, so after minimization
    # some enumerated conflict is contained in it.
    assert any(set(cf) <= set(classical["conflict"]) for cf in result["conflicts"])


def test_simulation_ops_do_not_change_digest(conference_session):
    s = conference_session
    before = s.digest()
    ok(s.dispatch({"op": "simulate-relax", "args": {"constraint": "c6"}}))
    ok(s.dispatch({"op": "in-conflict", "args": {"constraint": "c6"}}))
    ok(s.dispatch({"op": "stats"}))
    assert s.digest() == before


def test_relax_changes_state_and_digest(conference_session):
    s = conference_session
    before = s.digest()
    result = ok(s.dispatch({"op": "relax", "args": {"constraint": "c6"}}))
    assert result["status"] in ("consistent", "contradictory")
    assert s.digest() != before


def test_set_view_and_projection(conference_session):
    s = conference_session
    assert s.active_view == "expert"  # first view name in sorted order
    ok(s.dispatch({"op": "set-view", "args": {"view": "michael"}}))
    result = ok(s.dispatch({"op": "project-conflicts"}))
    assert result["projected"]
    for entry in result["projected"]:
        assert entry["count"] >= 1
        assert all(isinstance(label, str) for label in entry["labels"])
    assert err(s.dispatch({"op": "set-view", "args": {"view": "nobody"}})) == "unknown-view"


def test_project_arbitrary_constraint_set(conference_session):
    s = conference_session
    ok(s.dispatch({"op": "set-view", "args": {"view": "michael"}}))
    result = ok(
        s.dispatch(
            {"op": "project", "args": {"constraints": ["c1", "c2", "c3", "c4", "c5", "c6"]}}
        )
    )
    assert set(result["labels"]) == {"The conf. problem", "P&A before"}


def test_project_explanation(conference_session):
    s = conference_session
    var = s.state.problem.variables[s.state.contradiction.variable].variable.name
    result = ok(
        s.dispatch({"op": "project-explanation", "args": {"variable": var, "value": 4}})
    )
    assert result["projections"]


def test_relax_node_refuses_decisions(conference_doc):
    doc = copy.deepcopy(conference_doc)
    doc["constraints"].append(
        {"name": "pick", "kind": "assign", "scope": ["Ma"], "payload": 2}
    )
    doc["hierarchy"]["nodes"].append(
        {"id": "picks", "label": "Decisions", "parent": "root"}
    )
    doc["hierarchy"]["constraints"]["pick"] = "picks"
    s = session_from_doc(doc)
    assert err(s.dispatch({"op": "relax-node", "args": {"node": "picks"}})) == "covers-decisions"
    result = ok(s.dispatch({"op": "relax-node", "args": {"node": "before"}}))
    assert set(result["relaxed"]) == {"c6", "c7", "c8", "c9"}


def test_unknown_op_and_bad_args(conference_session):
    s = conference_session
    assert err(s.dispatch({"op": "frobnicate"})) == "unknown-op"
    assert err(s.dispatch({})) == "unknown-op"
    assert (
        err(s.dispatch({"op": "explain", "args": {"variable": "Zz", "value": 1}}))
        == "unknown-variable"
    )
    assert (
        err(s.dispatch({"op": "relax", "args": {"constraint": "c99"}}))
        == "unknown-constraint"
    )


def test_snapshot_contains_digest(conference_session):
    s = conference_session
    result = ok(s.dispatch({"op": "snapshot"}))
    assert result["digest"] == s.digest()
    assert len(result["rows"]) == 16
    assert result["active"] and result["relaxed"] == []


def test_replay_reproduces_replies_and_digest(conference_doc):
    s = session_from_doc(conference_doc)
    commands = [
        {"op": "domains"},
        {"op": "conflicts"},
        {"op": "relax", "args": {"constraint": "c6"}},
        {"op": "domains"},
        {"op": "simulate-relax", "args": {"constraint": "c7"}},
        {"op": "snapshot"},
    ]
    replies = [s.dispatch(cmd) for cmd in commands]
    replayed, replies2 = replay(conference_doc, s.log)
    assert json.dumps(replies, sort_keys=True) == json.dumps(replies2, sort_keys=True)
    assert replayed.digest() == s.digest()
