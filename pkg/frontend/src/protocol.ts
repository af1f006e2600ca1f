// Wire types of the session HTTP protocol. The client renders exactly what
// the server replies; it never computes solver logic on its own.

export interface SessionInfo {
  session_id: string;
  status: string;
  digest: string;
  views: string[];
  active_view: string | null;
}

export interface CommandError {
  code: string;
  message: string;
}

export interface CommandReply {
  ok: boolean;
  result: Record<string, unknown> | null;
  error: CommandError | null;
  digest: string;
}

export interface SnapshotRow {
  variable: string;
  value: number;
  present: boolean;
  explanations: string[][];
  main: string[] | null;
}

export interface SnapshotResult {
  rows: SnapshotRow[];
  status: string;
  active: string[];
  relaxed: string[];
  digest: string;
}

export interface DomainsResult {
  domains: Record<string, number[]>;
  status: string;
  contradiction: string | null;
}

export interface SimulateRelaxResult {
  constraint: string;
  would_restore: { variable: string; value: number }[];
  stays_removed: { variable: string; value: number; survivors: string[][] }[];
  failure_persists: boolean;
}

export interface SimulateAddResult {
  constraint: string;
  predicted_removals: { variable: string; value: number; explanation: string[] }[];
  predicted_failure: boolean;
}

export interface ConflictsResult {
  variable: string;
  conflicts: string[][];
  raw_count: number;
  truncated: boolean;
}

export interface ProjectedConflictsResult {
  projected: { labels: string[]; count: number }[];
}

export interface ProjectResult {
  labels: string[];
}

// Scenario document fields the client actually uses.
export interface ScenarioConstraint {
  name: string;
  kind: string;
  scope: string[];
  decision?: boolean;
}

export interface HierarchyNodeDoc {
  id: string;
  label: string;
  parent: string | null;
}

export interface ScenarioDoc {
  variables: { name: string; domain: number[] }[];
  constraints: ScenarioConstraint[];
  hierarchy?: {
    nodes: HierarchyNodeDoc[];
    constraints: Record<string, string>;
  } | null;
  views?: Record<string, string[]>;
}
