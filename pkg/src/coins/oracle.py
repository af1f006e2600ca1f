"""Brute-force solution enumeration over initial domains.

This is the ground truth every nogood claim is checked against: a constraint
subset C' is a sound conflict iff this enumerator finds no assignment
satisfying all of C'. It deliberately knows nothing about propagation or
explanation storage.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .model import Problem, eval_constraint


def iter_assignments(p: Problem) -> Iterator[dict[int, int]]:
    domains = [d.initial for d in p.variables]
    for combo in itertools.product(*domains):
        yield dict(enumerate(combo))


def solutions(p: Problem, constraint_ids: Iterable[int] | None = None) -> list[dict[int, int]]:
    """All total assignments satisfying the given constraints (default: active set)."""
    if constraint_ids is None:
        ids = sorted(p.config.active)
    else:
        ids = sorted(set(constraint_ids))
    specs = [p.constraints[i] for i in ids]
    return [a for a in iter_assignments(p) if all(eval_constraint(s, a) for s in specs)]


def count_solutions(p: Problem, constraint_ids: Iterable[int] | None = None) -> int:
    return len(solutions(p, constraint_ids))


def is_nogood(p: Problem, constraint_ids: Iterable[int]) -> bool:
    """True iff the constraint subset alone admits no solution."""
    return count_solutions(p, constraint_ids) == 0


def excludes_value(p: Problem, constraint_ids: Iterable[int], var: int, value: int) -> bool:
    """True iff no solution of the subset assigns `value` to `var`."""
    ids = sorted(set(constraint_ids))
    specs = [p.constraints[i] for i in ids]
    for a in iter_assignments(p):
        if a[var] == value and all(eval_constraint(s, a) for s in specs):
            return False
    return True
