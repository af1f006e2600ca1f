"""Propagation-free simulation and diagnosis queries.

Every operation here is a pure scan of the stored explanations: no domain is
touched, no constraint is evaluated. The price is one-sidedness; a simulation
may under-predict what real propagation would discover, never over-predict.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .conflict import Conflict, enumerate_conflicts, raw_unions, _bucket0_columns
from .engine import CONTRADICTORY, EngineState
from .xstore import Explanation, RemovalKey, sort_explanations


class WhatIfError(RuntimeError):
    """Raised when a query does not apply to the current engine status."""


@dataclass
class RelaxSimReport:
    constraint: int
    would_restore: list[RemovalKey] = field(default_factory=list)
    stays_removed: dict[RemovalKey, list[Explanation]] = field(default_factory=dict)
    failure_persists: bool = False


@dataclass
class AddSimReport:
    constraint: int
    predicted_removals: list[tuple[RemovalKey, Explanation]] = field(default_factory=list)
    predicted_failure: bool = False


@dataclass
class Diagnosis:
    key: RemovalKey
    present: bool
    explanations: list[Explanation] = field(default_factory=list)
    main: Explanation | None = None


def simulate_relax(st: EngineState, c: int) -> RelaxSimReport:
    """Which removed values would come back if `c` were relaxed, store-only."""
    p = st.problem
    if c not in p.config.active:
        raise WhatIfError(f"constraint {c} is not active")
    report = RelaxSimReport(constraint=c)
    for key in sorted(st.store.records):
        var, value = key
        if p.variables[var].is_present(value):
            continue
        valid = st.store.valid_explanations(key)
        if not any(c in e for e in valid):
            continue
        survivors = [e for e in valid if c not in e]
        if survivors:
            report.stays_removed[key] = survivors
        else:
            report.would_restore.append(key)
    if st.status == CONTRADICTORY:
        var = st.contradiction.variable
        report.failure_persists = all(
            any(c not in e for e in st.store.valid_explanations((var, value)))
            for value in p.variables[var].initial
        )
    return report


def simulate_add(st: EngineState, c: int) -> AddSimReport:
    """Which present values a reactivation of `c` would immediately remove."""
    p = st.problem
    if st.status == CONTRADICTORY:
        raise WhatIfError("simulate_add needs a consistent state")
    if c not in p.config.relaxed:
        raise WhatIfError(f"constraint {c} is not relaxed")
    report = AddSimReport(constraint=c)
    hits: Counter[int] = Counter()
    for key in sorted(st.store.records):
        var, value = key
        if not p.variables[var].is_present(value):
            continue
        rec = st.store.records[key]
        becoming_valid = sort_explanations(
            e for e in rec.all_explanations() if e & p.config.relaxed == {c}
        )
        if becoming_valid:
            report.predicted_removals.append((key, becoming_valid[0]))
            hits[var] += 1
    report.predicted_failure = any(
        len(p.variables[var].present) - n <= 0 for var, n in hits.items()
    )
    return report


def in_conflict(st: EngineState, c: int, cap: int = 64) -> tuple[bool, list[Conflict]]:
    """Does `c` belong to some conflict of the current contradiction?

    The verdict is computed on the raw explanation combinations (a conflict
    containing `c` may be subsumption-minimized away); the returned list
    holds the minimized conflicts that contain `c`.
    """
    if st.status != CONTRADICTORY:
        raise WhatIfError("in_conflict needs a contradictory state")
    var = st.contradiction.variable
    columns = _bucket0_columns(st, var)
    verdict = any(c in union for union in raw_unions(columns, limit=cap))
    conflicts = enumerate_conflicts(st, var, cap)
    return verdict, [cf for cf in conflicts.conflicts if c in cf.constraints]


def why_not(st: EngineState, var: int, value: int) -> Diagnosis:
    """All valid explanations for a removed value; empty if it is available."""
    dom = st.problem.variables[var]
    if value not in dom.initial:
        raise WhatIfError(f"value {value} not in the initial domain of variable {var}")
    if dom.is_present(value):
        return Diagnosis(key=(var, value), present=True)
    key = (var, value)
    return Diagnosis(
        key=key,
        present=False,
        explanations=st.store.valid_explanations(key),
        main=st.store.main(key),
    )
