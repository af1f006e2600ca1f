"""The two-day seminar scheduling scenario used as the golden test case.

Four half-day slots for four presentations (Michael to Peter/Alan and back);
the fourteen constraints below over-constrain the problem, which is the
whole point: it exercises contradiction reporting, conflict enumeration and
the projection machinery. The box tree mirrors how the organizer thinks of
the problem; "michael" is the preset view of someone who only understands
his own wishes.
"""

from __future__ import annotations

CONFERENCE_SCENARIO: dict = {
    "schema": "coins-scenario/1",
    "k": 1,
    "variables": [
        {"name": "Ma", "domain": [1, 2, 3, 4]},
        {"name": "Mp", "domain": [1, 2, 3, 4]},
        {"name": "Am", "domain": [1, 2, 3, 4]},
        {"name": "Pm", "domain": [1, 2, 3, 4]},
    ],
    "constraints": [
        {"name": "c1", "kind": "binary-neq", "scope": ["Ma", "Am"]},
        {"name": "c2", "kind": "binary-neq", "scope": ["Mp", "Pm"]},
        {"name": "c3", "kind": "binary-neq", "scope": ["Ma", "Pm"]},
        {"name": "c4", "kind": "binary-neq", "scope": ["Mp", "Am"]},
        {"name": "c5", "kind": "binary-neq", "scope": ["Am", "Pm"]},
        {"name": "c6", "kind": "binary-gt", "scope": ["Ma", "Am"]},
        {"name": "c7", "kind": "binary-gt", "scope": ["Ma", "Pm"]},
        {"name": "c8", "kind": "binary-gt", "scope": ["Mp", "Am"]},
        {"name": "c9", "kind": "binary-gt", "scope": ["Mp", "Pm"]},
        {"name": "c10", "kind": "unary-neq", "scope": ["Ma"], "payload": 4},
        {"name": "c11", "kind": "unary-neq", "scope": ["Mp"], "payload": 4},
        {"name": "c12", "kind": "unary-neq", "scope": ["Am"], "payload": 4},
        {"name": "c13", "kind": "unary-neq", "scope": ["Pm"], "payload": 4},
        {"name": "c14", "kind": "binary-neq", "scope": ["Ma", "Mp"]},
    ],
    "hierarchy": {
        "nodes": [
            {"id": "root", "label": "The conf. problem", "parent": None},
            {"id": "implicit", "label": "Implicit constraints", "parent": "root"},
            {"id": "speaker-auditor", "label": "Speaker vs. Auditor", "parent": "implicit"},
            {"id": "auditor-2pers", "label": "Auditor vs. 2 pers.", "parent": "implicit"},
            {"id": "before", "label": "P&A before", "parent": "root"},
            {"id": "not-4th", "label": "Not 4th 1/2 day", "parent": "root"},
            {"id": "not-same-time", "label": "P&A not same time", "parent": "root"},
        ],
        "constraints": {
            "c1": "speaker-auditor",
            "c2": "speaker-auditor",
            "c3": "speaker-auditor",
            "c4": "speaker-auditor",
            "c5": "auditor-2pers",
            "c6": "before",
            "c7": "before",
            "c8": "before",
            "c9": "before",
            "c10": "not-4th",
            "c11": "not-4th",
            "c12": "not-4th",
            "c13": "not-4th",
            "c14": "not-same-time",
        },
    },
    "views": {
        "michael": ["root", "before", "not-4th", "not-same-time"],
        "expert": [
            "root",
            "implicit",
            "speaker-auditor",
            "auditor-2pers",
            "before",
            "not-4th",
            "not-same-time",
        ],
    },
}
