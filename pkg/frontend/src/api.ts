// Typed client for the clauseplan HTTP API. Every plan and clause shown in
// the UI originates from one of these calls; the client does no planning or
// retrieval of its own.

export interface Topic {
  label: string;
  clause_count: number;
}

export interface TopicKeyword {
  kw: string;
  rank: number;
}

export interface PlanStage {
  keyword: string;
  source: "custom" | "walk";
  score: number;
}

export interface PlanResponse {
  plan: PlanStage[];
  truncated: boolean;
  seed: number;
}

export interface PlanRequest {
  topic: string;
  custom_keywords: string[];
  n?: number;
  thresholds?: number[];
  seed?: number;
}

export interface Candidate {
  text: string;
  score: number;
  clause_id: string;
}

export interface GenerateResponse {
  candidates: Candidate[];
  empty_query: boolean;
  seed: number;
}

export interface GenerateRequest {
  topic: string;
  plan: string[];
  k?: number;
  topic_filter?: boolean;
  seed?: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let res: Response;
    try {
      res = await this.fetchImpl(this.baseUrl + path, init);
    } catch (e) {
      throw new ApiError(0, `service unreachable: ${String(e)}`);
    }
    const body = await res.json().catch(() => ({}));
    if (!res.ok) {
      const detail = typeof body?.error === "string" ? body.error : res.statusText;
      throw new ApiError(res.status, detail);
    }
    return body as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("/health");
  }

  topics(q = "", limit = 20): Promise<{ topics: Topic[] }> {
    const params = new URLSearchParams({ q, limit: String(limit) });
    return this.request(`/topics?${params}`);
  }

  topicKeywords(label: string, limit = 20): Promise<{ keywords: TopicKeyword[] }> {
    const params = new URLSearchParams({ limit: String(limit) });
    return this.request(`/topics/${encodeURIComponent(label)}/keywords?${params}`);
  }

  plan(req: PlanRequest): Promise<PlanResponse> {
    return this.request("/plan", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
  }

  generate(req: GenerateRequest): Promise<GenerateResponse> {
    return this.request("/generate", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
  }
}
