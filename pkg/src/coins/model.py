"""Problem definition: variables, finite integer domains, constraints.

A problem owns the active/relaxed partition of its constraints but knows
nothing about propagation or explanations; those live in `engine` and
`xstore`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

BINARY_KINDS = ("binary-neq", "binary-gt", "binary-lt", "binary-table")
UNARY_KINDS = ("unary-neq", "assign")
KINDS = BINARY_KINDS + UNARY_KINDS


class ModelError(ValueError):
    """Raised for malformed problems, constraints or assignments."""


@dataclass(frozen=True)
class VariableId:
    index: int
    name: str


@dataclass(frozen=True)
class ConstraintId:
    index: int
    name: str


@dataclass
class DomainState:
    """Current domain of one variable: `present` shrinks, `initial` never does."""

    variable: VariableId
    initial: tuple[int, ...]
    present: set[int]

    def is_present(self, value: int) -> bool:
        return value in self.present

    def present_values(self) -> list[int]:
        return [v for v in self.initial if v in self.present]

    def removed_values(self) -> list[int]:
        return [v for v in self.initial if v not in self.present]


@dataclass(frozen=True)
class ConstraintSpec:
    id: ConstraintId
    kind: str
    scope: tuple[int, ...]  # variable indices
    payload: object = None  # int for unary kinds, tuple of pairs for binary-table
    decision: bool = False


@dataclass
class Configuration:
    """Partition of posted constraints into active and relaxed sets."""

    active: set[int] = field(default_factory=set)
    relaxed: set[int] = field(default_factory=set)


@dataclass
class Problem:
    variables: list[DomainState]
    constraints: list[ConstraintSpec]
    config: Configuration
    k: int

    def variable_by_name(self, name: str) -> DomainState:
        for d in self.variables:
            if d.variable.name == name:
                return d
        raise ModelError(f"unknown variable: {name}")

    def constraint(self, index: int) -> ConstraintSpec:
        if not 0 <= index < len(self.constraints):
            raise ModelError(f"unknown constraint index: {index}")
        return self.constraints[index]


def build_problem(vars: Sequence[tuple[str, Sequence[int]]], k: int) -> Problem:
    """Create a problem with the given variables and no constraints yet."""
    if k < 1:
        raise ModelError(f"relevance bound k must be >= 1, got {k}")
    seen: set[str] = set()
    domains: list[DomainState] = []
    for idx, (name, values) in enumerate(vars):
        if name in seen:
            raise ModelError(f"duplicate variable name: {name}")
        seen.add(name)
        if not values:
            raise ModelError(f"empty domain for variable: {name}")
        ordered = tuple(sorted(set(values)))
        domains.append(DomainState(VariableId(idx, name), ordered, set(ordered)))
    return Problem(variables=domains, constraints=[], config=Configuration(), k=k)


def post_constraint(
    p: Problem,
    kind: str,
    scope: Sequence[int],
    payload: object = None,
    name: str | None = None,
    decision: bool = False,
) -> ConstraintId:
    """Append a constraint as active. Propagation is a separate, explicit step."""
    if kind not in KINDS:
        raise ModelError(f"unknown constraint kind: {kind}")
    arity = 1 if kind in UNARY_KINDS else 2
    if len(scope) != arity:
        raise ModelError(f"{kind} expects arity {arity}, got scope {tuple(scope)}")
    for v in scope:
        if not 0 <= v < len(p.variables):
            raise ModelError(f"constraint scope references unknown variable {v}")
    if arity == 2 and scope[0] == scope[1]:
        raise ModelError("binary constraint needs two distinct variables")
    if kind in UNARY_KINDS and not isinstance(payload, int):
        raise ModelError(f"{kind} needs an integer payload")
    if kind == "binary-table":
        pairs = tuple(tuple(pair) for pair in payload or ())
        dx = set(p.variables[scope[0]].initial)
        dy = set(p.variables[scope[1]].initial)
        for a, b in pairs:
            if a not in dx or b not in dy:
                raise ModelError(f"table pair {(a, b)} outside initial domains")
        payload = pairs
    if kind == "assign":
        decision = True
    index = len(p.constraints)
    cid = ConstraintId(index, name if name is not None else f"c{index}")
    spec = ConstraintSpec(cid, kind, tuple(scope), payload, decision)
    p.constraints.append(spec)
    p.config.active.add(index)
    return cid


def eval_constraint(spec: ConstraintSpec, assignment: Mapping[int, int]) -> bool:
    """Check one constraint against a (partial) assignment covering its scope."""
    try:
        values = [assignment[v] for v in spec.scope]
    except KeyError as exc:
        raise ModelError(f"assignment misses variable {exc.args[0]}") from exc
    if spec.kind == "binary-neq":
        return values[0] != values[1]
    if spec.kind == "binary-gt":
        return values[0] > values[1]
    if spec.kind == "binary-lt":
        return values[0] < values[1]
    if spec.kind == "binary-table":
        return (values[0], values[1]) in spec.payload
    if spec.kind == "unary-neq":
        return values[0] != spec.payload
    if spec.kind == "assign":
        return values[0] == spec.payload
    raise ModelError(f"unknown constraint kind: {spec.kind}")


def allowed_pairs(
    spec: ConstraintSpec, dx: Iterable[int], dy: Iterable[int]
) -> set[tuple[int, int]]:
    """All (a, b) from dx x dy satisfying a binary constraint."""
    return {
        (a, b)
        for a in dx
        for b in dy
        if eval_constraint(spec, {spec.scope[0]: a, spec.scope[1]: b})
    }
