// Pure mapping from server replies to renderable structures. Nothing in this
// module talks to the network or the DOM, which is what makes it testable;
// and nothing here re-derives solver facts — cells, chips and panes carry
// exactly what the server said.

import type {
  ConflictsResult,
  ProjectedConflictsResult,
  ScenarioDoc,
  SimulateAddResult,
  SimulateRelaxResult,
  SnapshotResult,
  SnapshotRow,
} from "./protocol.js";

export interface GridCell {
  variable: string;
  value: number;
  present: boolean;
  explanationCount: number;
  main: string[] | null;
}

export interface DomainGrid {
  variables: string[];
  values: number[];
  cells: GridCell[];
  emptyVariables: string[];
}

export function buildGrid(snapshot: SnapshotResult): DomainGrid {
  const variables: string[] = [];
  const values = new Set<number>();
  for (const row of snapshot.rows) {
    if (!variables.includes(row.variable)) variables.push(row.variable);
    values.add(row.value);
  }
  const cells = snapshot.rows.map((row: SnapshotRow): GridCell => {
    return {
      variable: row.variable,
      value: row.value,
      present: row.present,
      explanationCount: row.explanations.length,
      main: row.main,
    };
  });
  const emptyVariables = variables.filter((v) =>
    cells.filter((c) => c.variable === v).every((c) => !c.present),
  );
  return {
    variables,
    values: [...values].sort((a, b) => a - b),
    cells,
    emptyVariables,
  };
}

export interface ConstraintEntry {
  name: string;
  kind: string;
  scope: string[];
  decision: boolean;
  relaxed: boolean;
}

export function buildConstraintPanel(
  scenario: ScenarioDoc,
  active: string[],
  relaxed: string[],
): ConstraintEntry[] {
  const relaxedSet = new Set(relaxed);
  const known = new Set([...active, ...relaxed]);
  return scenario.constraints
    .filter((c) => known.has(c.name))
    .map((c) => ({
      name: c.name,
      kind: c.kind,
      scope: c.scope,
      decision: c.decision ?? false,
      relaxed: relaxedSet.has(c.name),
    }));
}

export interface ConflictPane {
  variable: string;
  conflicts: string[][];
  rawCount: number;
  truncated: boolean;
}

export function buildConflictPane(result: ConflictsResult): ConflictPane {
  return {
    variable: result.variable,
    conflicts: result.conflicts,
    rawCount: result.raw_count,
    truncated: result.truncated,
  };
}

export interface TreeNode {
  id: string;
  label: string;
  inView: boolean;
  constraints: string[];
  children: TreeNode[];
}

/** Hierarchy tree with view-membership flags, for the view editor. */
export function buildHierarchyTree(
  scenario: ScenarioDoc,
  viewNodes: string[],
): TreeNode | null {
  const h = scenario.hierarchy;
  if (!h) return null;
  const inView = new Set(viewNodes);
  const byParent = new Map<string | null, typeof h.nodes>();
  for (const node of h.nodes) {
    const siblings = byParent.get(node.parent) ?? [];
    siblings.push(node);
    byParent.set(node.parent, siblings);
  }
  const constraintsAt = new Map<string, string[]>();
  for (const [cname, nodeId] of Object.entries(h.constraints)) {
    const list = constraintsAt.get(nodeId) ?? [];
    list.push(cname);
    constraintsAt.set(nodeId, list);
  }
  const build = (id: string, label: string): TreeNode => ({
    id,
    label,
    inView: inView.has(id),
    constraints: (constraintsAt.get(id) ?? []).sort(),
    children: (byParent.get(id) ?? [])
      .sort((a, b) => a.id.localeCompare(b.id))
      .map((n) => build(n.id, n.label)),
  });
  const roots = byParent.get(null) ?? [];
  if (roots.length !== 1 || !roots[0]) return null;
  return build(roots[0].id, roots[0].label);
}

export interface WhatIfPane {
  kind: "relax" | "add";
  constraint: string;
  lines: string[];
  failure: boolean;
}

export function buildRelaxPane(result: SimulateRelaxResult): WhatIfPane {
  const lines: string[] = [];
  for (const item of result.would_restore) {
    lines.push(`would restore ${item.variable}=${item.value}`);
  }
  for (const item of result.stays_removed) {
    lines.push(
      `${item.variable}=${item.value} stays removed (${item.survivors.length} other reasons)`,
    );
  }
  if (lines.length === 0) lines.push("no stored effect");
  return {
    kind: "relax",
    constraint: result.constraint,
    lines,
    failure: result.failure_persists,
  };
}

export function buildAddPane(result: SimulateAddResult): WhatIfPane {
  const lines = result.predicted_removals.map(
    (item) => `would remove ${item.variable}=${item.value} [${item.explanation.join(", ")}]`,
  );
  if (lines.length === 0) lines.push("no stored effect");
  return {
    kind: "add",
    constraint: result.constraint,
    lines,
    failure: result.predicted_failure,
  };
}

/** Deduplicated, sorted label chips for projected explanations/conflicts. */
export function chips(labels: string[]): string[] {
  return [...new Set(labels)].sort();
}

export function projectedConflictChips(result: ProjectedConflictsResult): string[] {
  return chips(result.projected.flatMap((entry) => entry.labels));
}

export interface HistoryEntry {
  op: string;
  ok: boolean;
  summary: string;
}

export class CommandHistory {
  readonly entries: HistoryEntry[] = [];

  push(op: string, ok: boolean, summary: string): void {
    this.entries.push({ op, ok, summary });
  }

  last(): HistoryEntry | undefined {
    return this.entries[this.entries.length - 1];
  }
}
