import type { BenchmarkReport, BootstrapStat, ModeBlock } from "./types";
import { METRIC_LABELS, METRICS, SCOPES } from "./types";

const BAR_HEIGHT = 160; // px for a metric value of 1.0

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function validateReport(report: unknown): report is BenchmarkReport {
  if (typeof report !== "object" || report === null) return false;
  const r = report as Record<string, unknown>;
  if (typeof r.modes !== "object" || r.modes === null) return false;
  for (const mode of Object.values(r.modes as Record<string, unknown>)) {
    const m = mode as Record<string, unknown>;
    if (typeof m.scopes !== "object" || m.scopes === null) return false;
    if (typeof m.bootstrap !== "object" || m.bootstrap === null) return false;
    for (const scope of SCOPES) {
      const block = (m.scopes as Record<string, unknown>)[scope];
      if (typeof block !== "object" || block === null) return false;
      if (typeof (block as Record<string, unknown>).metrics !== "object") return false;
    }
  }
  return true;
}

function metricBar(
  label: string,
  mean: number | null,
  stat: BootstrapStat | undefined,
): HTMLElement {
  const cell = el("div", "metric-cell");
  const column = el("div", "bar-column");
  const bar = el("div", "bar");
  const value = mean ?? 0;
  bar.style.height = `${Math.max(0, Math.min(1, value)) * BAR_HEIGHT}px`;
  column.append(bar);
  if (stat !== undefined) {
    // Error bar spans mean +/- margin_of_error, values straight from the API.
    const me = stat.margin_of_error;
    const whisker = el("div", "error-bar");
    whisker.style.height = `${Math.min(1, 2 * me) * BAR_HEIGHT}px`;
    whisker.style.bottom = `${Math.max(0, value - me) * BAR_HEIGHT}px`;
    whisker.dataset.margin = String(me);
    column.append(whisker);
  }
  cell.append(column);
  cell.append(el("div", "metric-label", label));
  cell.append(
    el("div", "metric-value", mean === null ? "n/a" : value.toFixed(3)),
  );
  return cell;
}

function scopeGroup(scope: string, mode: ModeBlock): HTMLElement {
  const group = el("div", "scope-group");
  group.dataset.scope = scope;
  const block = mode.scopes[scope];
  group.append(
    el("h3", undefined, `${scope.toUpperCase()} (${block.n_items} items)`),
  );
  const row = el("div", "metric-row");
  for (const metric of METRICS) {
    const mean = block.metrics[metric] ?? null;
    const stat = mode.bootstrap.scopes[scope]?.[metric];
    row.append(metricBar(METRIC_LABELS[metric], mean, stat));
  }
  group.append(row);
  return group;
}

export function renderDashboard(root: HTMLElement, report: unknown): void {
  root.textContent = "";
  if (report === null || report === undefined) {
    root.append(el("div", "empty-state", "No benchmark report yet. Run one to see metrics."));
    return;
  }
  if (!validateReport(report)) {
    root.append(el("div", "error-banner", "Benchmark report does not match the expected schema."));
    return;
  }
  const modes = Object.keys(report.modes).sort();
  const picker = el("div", "mode-picker");
  const body = el("div", "mode-body");

  const show = (name: string) => {
    body.textContent = "";
    const modeBlock = report.modes[name];
    for (const scope of SCOPES) {
      body.append(scopeGroup(scope, modeBlock));
    }
    for (const button of picker.querySelectorAll("button")) {
      button.classList.toggle("active", button.textContent === name);
    }
  };

  for (const name of modes) {
    const button = el("button", "mode-button", name);
    button.addEventListener("click", () => show(name));
    picker.append(button);
  }
  root.append(
    el(
      "div",
      "report-meta",
      `${report.benchmark.total} questions (kg ${report.benchmark.kg} / vs ${report.benchmark.vs}), seed ${report.seed}`,
    ),
  );
  root.append(picker, body);
  show(modes.includes("agentic") ? "agentic" : modes[0]);
}
