import type { BenchmarkReport, QueryResponse } from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

/** Thin client over the engine's HTTP JSON API. */
export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = fetch.bind(globalThis),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = await response.json();
        if (body && body.detail) {
          detail = typeof body.detail === "string" ? body.detail : JSON.stringify(body.detail);
        }
      } catch {
        // keep statusText
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  postQuery(question: string): Promise<QueryResponse> {
    return this.request<QueryResponse>("/query", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ question }),
    });
  }

  fetchReport(): Promise<BenchmarkReport> {
    return this.request<BenchmarkReport>("/benchmark/report");
  }

  runBenchmark(modes?: string[]): Promise<BenchmarkReport> {
    return this.request<BenchmarkReport>("/benchmark/run", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(modes ? { modes } : {}),
    });
  }

  fetchSchema(): Promise<{ schema: string }> {
    return this.request<{ schema: string }>("/graph/schema");
  }
}
