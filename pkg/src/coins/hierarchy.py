"""Hierarchical problem boxes and projection onto a user's view.

Constraints hang off leaf boxes of a labeled tree. A user view is the set of
boxes the user understands; projecting a constraint walks from its leaf
toward the root and stops at the first understood box (the root always
counts as understood, so projection is total).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .conflict import ConflictSet
from .model import Problem


class HierarchyError(ValueError):
    """Raised for malformed trees, views, or unmapped constraints."""


@dataclass(frozen=True)
class HierarchyNode:
    id: str
    label: str
    parent: str | None  # None marks the root


@dataclass
class Hierarchy:
    nodes: dict[str, HierarchyNode]
    leaf_of: dict[int, str]  # constraint index -> node id

    @property
    def root(self) -> str:
        roots = [n.id for n in self.nodes.values() if n.parent is None]
        if len(roots) != 1:
            raise HierarchyError(f"expected exactly one root, found {sorted(roots)}")
        return roots[0]

    def children(self, node_id: str) -> list[str]:
        return sorted(n.id for n in self.nodes.values() if n.parent == node_id)

    def constraints_under(self, node_id: str) -> list[int]:
        """All constraints hanging below (or at) a node."""
        inside = {node_id}
        frontier = [node_id]
        while frontier:
            nxt = [c for nid in frontier for c in self.children(nid)]
            inside.update(nxt)
            frontier = nxt
        return sorted(c for c, nid in self.leaf_of.items() if nid in inside)


@dataclass
class UserView:
    understandable: frozenset[str]


def validate_hierarchy(h: Hierarchy, p: Problem) -> list[str]:
    """Returns the list of violations; empty means the hierarchy is sound."""
    problems: list[str] = []
    roots = [n.id for n in h.nodes.values() if n.parent is None]
    if len(roots) != 1:
        problems.append(f"expected exactly one root, found {len(roots)}")
    for node in h.nodes.values():
        if node.parent is not None and node.parent not in h.nodes:
            problems.append(f"node {node.id} has unknown parent {node.parent}")
    # Cycle / reachability check by walking parent chains.
    for node in h.nodes.values():
        seen = {node.id}
        cur = node
        while cur.parent is not None:
            if cur.parent in seen:
                problems.append(f"cycle through node {node.id}")
                break
            if cur.parent not in h.nodes:
                break
            seen.add(cur.parent)
            cur = h.nodes[cur.parent]
    for cid, nid in sorted(h.leaf_of.items()):
        if nid not in h.nodes:
            problems.append(f"constraint {cid} mapped to unknown node {nid}")
        elif h.children(nid):
            problems.append(f"constraint {cid} mapped to non-leaf node {nid}")
    for spec in p.constraints:
        if spec.id.index not in h.leaf_of:
            problems.append(f"constraint {spec.id.index} ({spec.id.name}) is unmapped")
    return problems


def project_constraint(h: Hierarchy, view: UserView, c: int) -> str:
    """Label of the first understood box on the path from c's leaf to the root."""
    if c not in h.leaf_of:
        raise HierarchyError(f"constraint {c} has no leaf mapping")
    root = h.root
    nid = h.leaf_of[c]
    while True:
        if nid in view.understandable or nid == root:
            return h.nodes[nid].label
        parent = h.nodes[nid].parent
        if parent is None:
            return h.nodes[nid].label
        nid = parent


def project(h: Hierarchy, view: UserView, cs: Iterable[int]) -> list[str]:
    """Deduplicated, sorted label set for a constraint set."""
    return sorted({project_constraint(h, view, c) for c in cs})


def project_conflicts(
    h: Hierarchy, view: UserView, conflicts: ConflictSet
) -> list[dict]:
    """Projected label sets with multiplicity, in first-seen order."""
    counts: Counter[tuple[str, ...]] = Counter()
    order: list[tuple[str, ...]] = []
    for cf in conflicts.conflicts:
        labels = tuple(project(h, view, cf.constraints))
        if labels not in counts:
            order.append(labels)
        counts[labels] += 1
    return [{"labels": list(labels), "count": counts[labels]} for labels in order]
