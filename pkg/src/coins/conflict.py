"""Conflict (nogood) enumeration from an empty domain.

The classical route unions the main explanation of every removed value of
the empty variable and yields a single conflict. The enumerating route walks
the Cartesian product of the valid-explanation buckets instead, producing a
set of conflicts that is then subsumption-minimized; some of its members may
be strictly more precise than the classical conflict.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .engine import EngineState
from .xstore import Explanation, sort_explanations

DEFAULT_CAP = 64


class ConflictError(ValueError):
    """Raised when conflicts are requested for a non-empty domain."""


@dataclass(frozen=True)
class Conflict:
    constraints: Explanation
    source: int  # variable whose domain emptied

    def sorted_ids(self) -> list[int]:
        return sorted(self.constraints)


@dataclass
class ConflictSet:
    conflicts: list[Conflict] = field(default_factory=list)
    truncated: bool = False
    cap: int = DEFAULT_CAP
    raw_count: int = 0


def _bucket0_columns(st: EngineState, var: int) -> list[list[Explanation]]:
    dom = st.problem.variables[var]
    if dom.present:
        raise ConflictError(f"domain of variable {var} is not empty")
    columns = []
    for value in dom.initial:
        valid = st.store.valid_explanations((var, value))
        if not valid:
            raise ConflictError(
                f"no valid explanation stored for {var}!={value} (store corruption)"
            )
        columns.append(valid)
    return columns


def raw_unions(columns: list[list[Explanation]], limit: int | None = None):
    """Odometer walk over one-explanation-per-value choices, yielding unions."""
    count = 0
    for combo in itertools.product(*columns):
        if limit is not None and count >= limit:
            return
        count += 1
        yield frozenset().union(*combo)


def minimize(sets: list[Explanation]) -> list[Explanation]:
    """Subsumption-minimal antichain, deterministically ordered."""
    ordered = sort_explanations(set(sets))
    kept: list[Explanation] = []
    for e in ordered:
        if not any(m <= e for m in kept):
            kept.append(e)
    return kept


def enumerate_from_columns(
    columns: list[list[Explanation]], source: int, cap: int = DEFAULT_CAP
) -> ConflictSet:
    raw_count = math.prod(len(col) for col in columns)
    truncated = raw_count > cap
    unions = list(raw_unions(columns, limit=cap if truncated else None))
    minimal = minimize(unions)[:cap]
    return ConflictSet(
        conflicts=[Conflict(e, source) for e in minimal],
        truncated=truncated,
        cap=cap,
        raw_count=raw_count,
    )


def enumerate_conflicts(st: EngineState, var: int, cap: int = DEFAULT_CAP) -> ConflictSet:
    return enumerate_from_columns(_bucket0_columns(st, var), var, cap)


def classical_conflict(st: EngineState, var: int) -> Conflict:
    """Single conflict from the main explanations only."""
    dom = st.problem.variables[var]
    if dom.present:
        raise ConflictError(f"domain of variable {var} is not empty")
    union: frozenset[int] = frozenset()
    for value in dom.initial:
        main = st.store.main((var, value))
        if main is None:
            raise ConflictError(f"missing main explanation for {var}!={value}")
        union |= main
    return Conflict(union, var)


def more_precise(e1: Explanation, e2: Explanation) -> bool:
    """True iff e1 is a strict subset of e2."""
    return e1 < e2
