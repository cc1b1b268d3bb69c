import { ApiClient, ApiError } from "./api";
import type { QueryResponse } from "./types";

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

function toolBadge(response: QueryResponse): HTMLElement {
  const badge = el("span", `badge badge-${response.choice.tool}`);
  badge.textContent = response.choice.tool === "graph" ? "KG" : "VS";
  badge.title = `decided by ${response.choice.decided_by}`;
  const by = el("span", "badge-by", response.choice.decided_by);
  const wrap = el("span", "badge-wrap");
  wrap.append(badge, by);
  return wrap;
}

function contextPanel(response: QueryResponse): HTMLElement {
  const details = el("details", "contexts");
  const summary = el("summary", undefined, `contexts (${response.contexts.length})`);
  details.append(summary);
  for (const ctx of response.contexts) {
    const item = el("div", "context-item");
    item.append(el("div", "context-provenance", ctx.provenance));
    if (ctx.provenance === "graph") {
      // Result tables arrive as TSV; show them as an actual table.
      const table = el("table", "context-table");
      for (const [i, line] of ctx.text.trimEnd().split("\n").entries()) {
        const row = el("tr");
        for (const cell of line.split("\t")) {
          row.append(el(i === 0 ? "th" : "td", undefined, cell));
        }
        table.append(row);
      }
      item.append(table);
    } else {
      item.append(el("pre", "context-text", ctx.text));
    }
    details.append(item);
  }
  return details;
}

export function renderTurn(response: QueryResponse, latencyMs: number): HTMLElement {
  const turn = el("div", "turn");
  const header = el("div", "turn-header");
  header.append(toolBadge(response));
  header.append(el("span", "latency", `${latencyMs.toFixed(0)} ms`));
  header.append(el("span", "trace", `trace ${response.trace_id}`));
  turn.append(el("div", "question", response.question));
  turn.append(header);
  turn.append(el("div", "answer", response.answer));
  turn.append(contextPanel(response));
  return turn;
}

export function renderErrorTurn(question: string, message: string): HTMLElement {
  const turn = el("div", "turn turn-error");
  turn.append(el("div", "question", question));
  turn.append(el("div", "error-message", message));
  return turn;
}

/** Chat view: one in-flight query at a time; input typed while waiting queues. */
export class ChatView {
  readonly root: HTMLElement;
  private input: HTMLInputElement;
  private button: HTMLButtonElement;
  private turns: HTMLElement;
  private inFlight = false;
  private queue: string[] = [];
  private now: () => number;

  constructor(
    private client: ApiClient,
    now: () => number = () => performance.now(),
  ) {
    this.now = now;
    this.root = el("div", "chat");
    this.turns = el("div", "turns");
    const form = el("form", "ask");
    this.input = el("input");
    this.input.placeholder = "Ask about the corpus...";
    this.button = el("button", undefined, "Ask");
    this.button.type = "submit";
    this.button.disabled = true;
    this.input.addEventListener("input", () => {
      this.button.disabled = this.input.value.trim() === "";
    });
    form.append(this.input, this.button);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const question = this.input.value.trim();
      if (!question) return;
      this.input.value = "";
      this.button.disabled = true;
      this.submit(question);
    });
    this.root.append(this.turns, form);
  }

  get submitDisabled(): boolean {
    return this.button.disabled;
  }

  submit(question: string): Promise<void> {
    if (this.inFlight) {
      this.queue.push(question);
      return Promise.resolve();
    }
    return this.send(question);
  }

  private async send(question: string): Promise<void> {
    this.inFlight = true;
    const started = this.now();
    try {
      const response = await this.client.postQuery(question);
      this.turns.append(renderTurn(response, this.now() - started));
    } catch (error) {
      const message =
        error instanceof ApiError
          ? error.status === 503
            ? "engine not ready: no snapshot loaded"
            : `request failed (${error.status}): ${error.message}`
          : `request failed: ${String(error)}`;
      this.turns.append(renderErrorTurn(question, message));
    } finally {
      this.inFlight = false;
      const next = this.queue.shift();
      if (next !== undefined) void this.send(next);
    }
  }
}
