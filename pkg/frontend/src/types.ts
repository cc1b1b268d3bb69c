// Shapes of the service's JSON payloads. The UI never recomputes metrics;
// every rendered number comes straight from these structures.

export interface ToolChoice {
  tool: "graph" | "vector";
  rationale: string;
  decided_by: "llm" | "heuristic_fallback" | "forced";
}

export interface ContextItem {
  text: string;
  provenance: string; // chunk id, or "graph" for a rendered result table
}

export interface QueryResponse {
  question: string;
  choice: ToolChoice;
  contexts: ContextItem[];
  answer: string;
  generator_id: string;
  trace_id: string;
}

export interface BootstrapStat {
  mean: number;
  std: number;
  n: number;
  df: number;
  alpha: number;
  t_critical: number;
  margin_of_error: number;
}

export interface ScopeBlock {
  n_items: number;
  metrics: Record<string, number | null>;
}

export interface ModeBlock {
  scopes: Record<string, ScopeBlock>;
  bootstrap: {
    b: number;
    sample_size: number;
    alpha: number;
    seed: number;
    scopes: Record<string, Record<string, BootstrapStat>>;
  };
  items: unknown[];
}

export interface BenchmarkReport {
  version: number;
  config_hash: string;
  seed: number;
  benchmark: { total: number; kg: number; vs: number };
  modes: Record<string, ModeBlock>;
  notes: Record<string, string>;
}

export const SCOPES = ["kg", "vs", "overall"] as const;
export const METRICS = [
  "faithfulness",
  "answer_relevance",
  "context_precision",
  "context_recall",
] as const;

export const METRIC_LABELS: Record<string, string> = {
  faithfulness: "F",
  answer_relevance: "AR",
  context_precision: "CP",
  context_recall: "CR",
};
