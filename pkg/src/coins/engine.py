"""Explanation-recording propagation and live relax/reactivate.

Propagation is AC-3 style over the active constraints with a deterministic
worklist (constraints by ascending id, values ascending). Every value removal
is justified: the removing constraint plus the main explanations of the
removed supports. When a revision re-justifies an already-removed value the
explanation is recorded as secondary information instead of being thrown
away; that accumulation is what powers conflict enumeration and the what-if
tools.

On contradiction (an empty domain) the engine freezes: it can be inspected
and constraints can be relaxed, but no propagation is accepted until a
relaxation restores a value to the empty domain.
"""

from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass, field

from .model import Problem, ConstraintSpec, eval_constraint
from .xstore import Explanation, RemovalKey, Store, sort_explanations

CONSISTENT = "consistent"
CONTRADICTORY = "contradictory"


class EngineError(RuntimeError):
    """Raised on operations illegal in the current engine status."""


@dataclass(frozen=True)
class RemovalEvent:
    key: RemovalKey
    explanation: Explanation
    cause: int


@dataclass
class ContradictionReport:
    variable: int
    per_value: dict[int, list[Explanation]]


@dataclass
class RelaxOutcome:
    restored: list[RemovalKey]
    re_removed: list[RemovalKey]
    status: str


@dataclass
class ReactivateOutcome:
    removed: list[RemovalKey]
    status: str


@dataclass
class EngineState:
    problem: Problem
    store: Store
    status: str = CONSISTENT
    contradiction: ContradictionReport | None = None
    trace: list[RemovalEvent] = field(default_factory=list)

    def clone(self) -> "EngineState":
        return copy.deepcopy(self)


def new_engine(problem: Problem) -> EngineState:
    return EngineState(problem=problem, store=Store(problem.k))


def _constraints_on(problem: Problem, var: int) -> list[int]:
    return [
        spec.id.index
        for spec in problem.constraints
        if var in spec.scope and spec.id.index in problem.config.active
    ]


def _satisfying_values(spec: ConstraintSpec, here: int, a: int, there_domain) -> list[int]:
    """Values of the other variable supporting `a` under a binary constraint."""
    x, y = spec.scope
    out = []
    for b in there_domain:
        assignment = {x: a, y: b} if here == x else {x: b, y: a}
        if eval_constraint(spec, assignment):
            out.append(b)
    return out


def _remove(st: EngineState, var: int, value: int, e: Explanation, cause: int) -> None:
    dom = st.problem.variables[var]
    dom.present.discard(value)
    st.store.record_explanation((var, value), e, st.problem.config.relaxed, True)
    st.trace.append(RemovalEvent((var, value), e, cause))


def _check_empty(st: EngineState, var: int) -> bool:
    dom = st.problem.variables[var]
    if dom.present:
        return False
    report = ContradictionReport(
        variable=var,
        per_value={
            a: st.store.valid_explanations((var, a)) for a in dom.initial
        },
    )
    st.status = CONTRADICTORY
    st.contradiction = report
    return True


def _revise(st: EngineState, cid: int) -> list[int]:
    """One constraint revision; returns variables whose domain changed."""
    p = st.problem
    spec = p.constraints[cid]
    changed: list[int] = []

    if spec.kind == "unary-neq" or spec.kind == "assign":
        (var,) = spec.scope
        dom = p.variables[var]
        doomed = (
            [spec.payload]
            if spec.kind == "unary-neq"
            else [v for v in dom.initial if v != spec.payload]
        )
        for value in doomed:
            if value not in dom.initial:
                continue
            e = frozenset([cid])
            if dom.is_present(value):
                _remove(st, var, value, e, cid)
                changed.append(var)
                if _check_empty(st, var):
                    return changed
            else:
                st.store.record_explanation((var, value), e, p.config.relaxed, False)
        return changed

    # Binary constraint: revise both directions in scope order.
    x, y = spec.scope
    for here, there in ((x, y), (y, x)):
        dom_here = p.variables[here]
        dom_there = p.variables[there]
        for a in dom_here.initial:
            supports = _satisfying_values(spec, here, a, dom_there.initial)
            if any(dom_there.is_present(b) for b in supports):
                continue
            e = frozenset([cid])
            for b in supports:
                main = st.store.main((there, b))
                if main is None:
                    raise EngineError(
                        f"removed value {there}!={b} has no main explanation"
                    )
                e |= main
            if dom_here.is_present(a):
                _remove(st, here, a, e, cid)
                changed.append(here)
                if _check_empty(st, here):
                    return changed
            else:
                st.store.record_explanation((here, a), e, p.config.relaxed, False)
    return changed


def _ac_fixpoint(st: EngineState) -> str:
    """Run revisions to fixpoint; deterministic worklist by ascending id."""
    queue = set(st.problem.config.active)
    while queue:
        cid = min(queue)
        queue.discard(cid)
        changed = _revise(st, cid)
        if st.status == CONTRADICTORY:
            return st.status
        for var in changed:
            queue.update(_constraints_on(st.problem, var))
    return st.status


# Sentinel id of the probe assignment inside a singleton-consistency probe.
# It never leaks into stored explanations.
PROBE = -1


_PROBE_COMBO_CAP = 64


def _probe(
    st: EngineState, var: int, value: int, descending: bool = False
) -> list[Explanation] | None:
    """Assert var=value on a scratch copy and run classical AC.

    When the probe wipes out some domain it returns justifying explanations
    for removing `value` (probe conflicts minus the probe assignment). The
    first entry is the classical one, built from main explanations only; the
    rest combine the stored alternatives of the wiped-out values and are
    recorded as secondary information.
    """
    p = st.problem
    present: dict[int, set[int]] = {d.variable.index: set(d.present) for d in p.variables}
    mains: dict[RemovalKey, Explanation] = {}

    def main_of(v: int, a: int) -> Explanation:
        key = (v, a)
        if key in mains:
            return mains[key]
        stored = st.store.main(key)
        if stored is None:
            raise EngineError(f"removed value {v}!={a} has no main explanation")
        return stored

    def wipeout(v: int) -> list[Explanation]:
        main_union: frozenset[int] = frozenset()
        columns: list[list[Explanation]] = []
        for a in p.variables[v].initial:
            key = (v, a)
            main_union |= main_of(v, a)
            if key in mains:
                columns.append([mains[key]])
            else:
                columns.append(st.store.valid_explanations(key))
        out = [main_union - {PROBE}]
        count = 0
        for combo in itertools.product(*columns):
            if count >= _PROBE_COMBO_CAP:
                break
            count += 1
            e = frozenset().union(*combo) - {PROBE}
            if e not in out:
                out.append(e)
        return out

    for b in p.variables[var].initial:
        if b != value and b in present[var]:
            present[var].discard(b)
            mains[(var, b)] = frozenset([PROBE])

    queue = set(p.config.active)
    pick = max if descending else min
    while queue:
        cid = pick(queue)
        queue.discard(cid)
        spec = p.constraints[cid]
        if spec.kind in ("unary-neq", "assign"):
            (v,) = spec.scope
            doomed = (
                [spec.payload]
                if spec.kind == "unary-neq"
                else [x for x in p.variables[v].initial if x != spec.payload]
            )
            for a in doomed:
                if a in present[v]:
                    present[v].discard(a)
                    mains[(v, a)] = frozenset([cid])
                    queue.update(_constraints_on(p, v))
                    if not present[v]:
                        return wipeout(v)
            continue
        x, y = spec.scope
        for here, there in ((x, y), (y, x)):
            for a in sorted(present[here]):
                supports = _satisfying_values(spec, here, a, p.variables[there].initial)
                if any(b in present[there] for b in supports):
                    continue
                e = frozenset([cid])
                for b in supports:
                    e |= main_of(there, b)
                present[here].discard(a)
                mains[(here, a)] = e
                queue.update(_constraints_on(p, here))
                if not present[here]:
                    return wipeout(here)
    return None


def _probe_sweep(st: EngineState) -> bool:
    """Probe every present value against the current fixpoint and remove the
    refuted ones; True when anything was removed.

    All probes run against the same snapshot so each refuted value gets its
    own independent justification instead of inheriting a cascade through
    the others. A second probe with the opposite revision order often
    refutes along a different path; its conflicts are kept as secondary
    explanations.
    """
    refuted: list[tuple[int, int, list[Explanation]]] = []
    for d in st.problem.variables:
        var = d.variable.index
        for value in d.present_values():
            es = _probe(st, var, value)
            if es is None:
                continue
            es.extend(_probe(st, var, value, descending=True) or [])
            refuted.append((var, value, es))
    for var, value, es in refuted:
        main, *secondary = es
        _remove(st, var, value, main, min(main))
        for e in secondary:
            st.store.record_explanation((var, value), e, st.problem.config.relaxed, False)
        if _check_empty(st, var):
            break
    return bool(refuted)


def propagate(st: EngineState) -> str:
    """Arc consistency plus singleton probing, run to a joint fixpoint.

    Plain AC misses globally infeasible but arc-consistent states (the
    golden scheduling scenario is one), so after each AC fixpoint every
    present value is probed; refuted values are removed with the probe
    conflict as explanation and AC resumes.
    """
    if st.status == CONTRADICTORY:
        raise EngineError("cannot propagate a contradictory state")
    _ac_fixpoint(st)
    while st.status == CONSISTENT:
        if not _probe_sweep(st):
            break
        if st.status == CONSISTENT:
            _ac_fixpoint(st)
    return st.status


def relax(st: EngineState, c: int) -> RelaxOutcome:
    """Move a constraint to the relaxed set, restore now-unjustified values,
    then repropagate."""
    p = st.problem
    if c not in p.config.active:
        raise EngineError(f"constraint {c} is not active")
    p.config.active.discard(c)
    p.config.relaxed.add(c)
    delta = st.store.on_relax(c, p.config.relaxed)

    restored: list[RemovalKey] = []
    for key in delta.emptied_bucket0:
        var, value = key
        dom = p.variables[var]
        if not dom.is_present(value):
            dom.present.add(value)
            st.store.drop_main(key)
            restored.append(key)

    if st.status == CONTRADICTORY:
        empty_var = st.contradiction.variable
        if p.variables[empty_var].present:
            st.status = CONSISTENT
            st.contradiction = None

    re_removed: list[RemovalKey] = []
    if st.status == CONSISTENT and restored:
        mark = len(st.trace)
        propagate(st)
        restored_set = set(restored)
        re_removed = [ev.key for ev in st.trace[mark:] if ev.key in restored_set]
    return RelaxOutcome(restored=restored, re_removed=re_removed, status=st.status)


def reactivate(st: EngineState, c: int) -> ReactivateOutcome:
    """Bring a relaxed constraint back, applying stored explanations that
    become valid before any propagation."""
    p = st.problem
    if st.status == CONTRADICTORY:
        raise EngineError("cannot reactivate while contradictory")
    if c not in p.config.relaxed:
        raise EngineError(f"constraint {c} is not relaxed")
    p.config.relaxed.discard(c)
    p.config.active.add(c)
    delta = st.store.on_reactivate(c, p.config.relaxed)

    # Apply every removal whose stored explanation became valid, even past a
    # wipeout: they are all justified, and simulation predicts all of them.
    removed: list[RemovalKey] = []
    wiped: int | None = None
    for key in sorted(delta.gained_bucket0):
        var, value = key
        dom = p.variables[var]
        if dom.is_present(value):
            incoming = delta.gained_bucket0[key]
            dom.present.discard(value)
            main = incoming[0]
            st.store.set_main(key, main)
            st.trace.append(RemovalEvent(key, main, c))
            removed.append(key)
            if not dom.present and wiped is None:
                wiped = var

    if wiped is not None:
        _check_empty(st, wiped)
    else:
        propagate(st)
    return ReactivateOutcome(removed=removed, status=st.status)


def domains_snapshot(st: EngineState) -> dict[str, list[int]]:
    return {
        d.variable.name: d.present_values() for d in st.problem.variables
    }


def full_snapshot(st: EngineState) -> list[dict]:
    """One row per (variable, value): explanations plus a present flag."""
    rows = []
    for d in st.problem.variables:
        for value in d.initial:
            key = (d.variable.index, value)
            valid = st.store.valid_explanations(key)
            main = st.store.main(key)
            rows.append(
                {
                    "variable": d.variable.name,
                    "value": value,
                    "present": d.is_present(value),
                    "explanations": [sorted(e) for e in valid],
                    "main": sorted(main) if main is not None else None,
                }
            )
    return rows
