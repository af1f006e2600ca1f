// Browser entry point: wires the view model to a plain DOM layout. All state
// shown here is the acknowledged server state — commands render only after
// their reply (and new digest) arrive.

import { SessionClient } from "./client.js";
import type {
  ConflictsResult,
  DomainsResult,
  ProjectedConflictsResult,
  SimulateAddResult,
  SimulateRelaxResult,
  SnapshotResult,
} from "./protocol.js";
import {
  buildConflictPane,
  buildConstraintPanel,
  buildGrid,
  buildHierarchyTree,
  buildAddPane,
  buildRelaxPane,
  chips,
  CommandHistory,
  projectedConflictChips,
  type TreeNode,
  type WhatIfPane,
} from "./viewmodel.js";

const history = new CommandHistory();

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function banner(message: string, retry: () => void): void {
  const box = document.getElementById("banner")!;
  box.textContent = message;
  box.classList.remove("hidden");
  const button = el("button", "retry", "retry");
  button.addEventListener("click", retry);
  box.appendChild(button);
}

async function refresh(client: SessionClient): Promise<void> {
  const snapshot = await client.result<SnapshotResult>("snapshot");
  const domains = await client.result<DomainsResult>("domains");
  const scenario = await client.serverScenario();

  const grid = buildGrid(snapshot);
  const gridBox = document.getElementById("grid")!;
  gridBox.replaceChildren();
  for (const variable of grid.variables) {
    const rowBox = el("div", "grid-row");
    const highlight = grid.emptyVariables.includes(variable) ? " empty" : "";
    rowBox.appendChild(el("span", `var-name${highlight}`, variable));
    for (const cell of grid.cells.filter((c) => c.variable === variable)) {
      const cellBox = el(
        "span",
        cell.present ? "cell present" : "cell removed",
        String(cell.value),
      );
      if (cell.explanationCount > 0) {
        cellBox.appendChild(el("sup", "badge", String(cell.explanationCount)));
      }
      cellBox.title = cell.main ? `main: ${cell.main.join(", ")}` : "";
      cellBox.dataset["variable"] = cell.variable;
      cellBox.dataset["value"] = String(cell.value);
      rowBox.appendChild(cellBox);
    }
    gridBox.appendChild(rowBox);
  }
  document.getElementById("status")!.textContent =
    domains.status + (domains.contradiction ? ` at ${domains.contradiction}` : "");

  const panel = document.getElementById("constraints")!;
  panel.replaceChildren();
  for (const entry of buildConstraintPanel(scenario, snapshot.active, snapshot.relaxed)) {
    const row = el("div", entry.relaxed ? "constraint relaxed" : "constraint active");
    row.appendChild(el("span", "c-name", entry.name));
    row.appendChild(el("span", "c-kind", `${entry.kind}(${entry.scope.join(", ")})`));
    if (entry.decision) row.appendChild(el("span", "c-decision", "decision"));
    const toggle = el("button", "c-toggle", entry.relaxed ? "reactivate" : "relax");
    toggle.addEventListener("click", async () => {
      const op = entry.relaxed ? "reactivate" : "relax";
      const reply = await client.command(op, { constraint: entry.name });
      history.push(op, reply.ok, entry.name);
      await refresh(client);
    });
    row.appendChild(toggle);
    panel.appendChild(row);
  }

  const conflictBox = document.getElementById("conflicts")!;
  conflictBox.replaceChildren();
  if (domains.status === "contradictory") {
    const result = await client.result<ConflictsResult>("conflicts");
    const pane = buildConflictPane(result);
    conflictBox.appendChild(
      el("div", "conflict-head", `${pane.rawCount} raw, ${pane.conflicts.length} minimal`),
    );
    for (const conflict of pane.conflicts) {
      conflictBox.appendChild(el("div", "conflict", conflict.join(", ")));
    }
    const projected = await client.result<ProjectedConflictsResult>("project-conflicts");
    const chipBox = el("div", "chips");
    for (const label of projectedConflictChips(projected)) {
      chipBox.appendChild(el("span", "chip", label));
    }
    conflictBox.appendChild(chipBox);
  }

  renderTree(client, scenario, snapshot);
  renderHistory();
}

function renderTree(
  client: SessionClient,
  scenario: Awaited<ReturnType<SessionClient["serverScenario"]>>,
  snapshot: SnapshotResult,
): void {
  const viewName = client.info.active_view;
  const viewNodes = viewName ? (scenario.views?.[viewName] ?? []) : [];
  const tree = buildHierarchyTree(scenario, viewNodes);
  const box = document.getElementById("hierarchy")!;
  box.replaceChildren();
  if (!tree) return;
  const viewPicker = el("div", "views");
  for (const name of Object.keys(scenario.views ?? {})) {
    const button = el("button", name === viewName ? "view on" : "view", name);
    button.addEventListener("click", async () => {
      await client.command("set-view", { view: name });
      client.info.active_view = name;
      await refresh(client);
    });
    viewPicker.appendChild(button);
  }
  box.appendChild(viewPicker);
  const render = (node: TreeNode, depth: number): void => {
    const row = el("div", node.inView ? "node understood" : "node");
    row.style.marginLeft = `${depth}em`;
    row.textContent = node.label + (node.constraints.length ? ` [${node.constraints.join(" ")}]` : "");
    box.appendChild(row);
    node.children.forEach((child) => render(child, depth + 1));
  };
  render(tree, 0);
}

function renderWhatIf(pane: WhatIfPane): void {
  const box = document.getElementById("whatif")!;
  box.replaceChildren();
  box.appendChild(el("div", "whatif-head", `simulate-${pane.kind} ${pane.constraint}`));
  for (const line of pane.lines) box.appendChild(el("div", "whatif-line", line));
  if (pane.failure) box.appendChild(el("div", "chip failure", "failure persists"));
}

function renderHistory(): void {
  const box = document.getElementById("history")!;
  box.replaceChildren();
  for (const entry of history.entries.slice(-20)) {
    box.appendChild(
      el("div", entry.ok ? "hist ok" : "hist err", `${entry.op} ${entry.summary}`),
    );
  }
}

async function wireWhatIf(client: SessionClient): Promise<void> {
  const form = document.getElementById("whatif-form") as HTMLFormElement;
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const name = (document.getElementById("whatif-constraint") as HTMLInputElement).value;
    const mode = (document.getElementById("whatif-mode") as HTMLSelectElement).value;
    if (mode === "relax") {
      const result = await client.result<SimulateRelaxResult>("simulate-relax", {
        constraint: name,
      });
      renderWhatIf(buildRelaxPane(result));
    } else {
      const result = await client.result<SimulateAddResult>("simulate-add", {
        constraint: name,
      });
      renderWhatIf(buildAddPane(result));
    }
    history.push(`simulate-${mode}`, true, name);
    renderHistory();
  });
}

async function boot(): Promise<void> {
  const endpoint = new URLSearchParams(location.search).get("server") ?? location.origin;
  try {
    const client = await SessionClient.connect(endpoint);
    document.getElementById("banner")!.classList.add("hidden");
    await wireWhatIf(client);
    await refresh(client);
  } catch (error) {
    banner(`cannot reach ${endpoint}: ${String(error)}`, () => void boot());
  }
}

void boot();
export { chips };
