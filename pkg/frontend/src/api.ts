/** Thin typed client over the backend HTTP API. */

import type {
  ExplainJobState,
  PredictResponse,
  WhatIfResponse,
} from "./types.js";

export class ApiError extends Error {
  status: number;
  unknownWords: string[];

  constructor(status: number, detail: string, unknownWords: string[] = []) {
    super(detail);
    this.status = status;
    this.unknownWords = unknownWords;
  }
}

export interface HealthResponse {
  status: string;
  model_loaded: boolean;
  format_version: number | null;
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class Api {
  private baseUrl: string;
  private fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(path: string, body?: unknown): Promise<T> {
    const init: RequestInit =
      body === undefined
        ? {}
        : {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
          };
    const resp = await this.fetchFn(this.baseUrl + path, init);
    let parsed: unknown = null;
    try {
      parsed = await resp.json();
    } catch {
      parsed = null;
    }
    if (!resp.ok) {
      const doc = (parsed ?? {}) as {
        detail?: string;
        unknown_words?: string[];
      };
      throw new ApiError(
        resp.status,
        doc.detail ?? `request failed with status ${resp.status}`,
        doc.unknown_words ?? [],
      );
    }
    return parsed as T;
  }

  health(): Promise<HealthResponse> {
    return this.request<HealthResponse>("/api/health");
  }

  predict(text: string): Promise<PredictResponse> {
    return this.request<PredictResponse>("/api/predict", { text });
  }

  startExplain(text: string, topK?: number): Promise<{ job_id: string }> {
    const body: { text: string; top_k?: number } = { text };
    if (topK !== undefined) body.top_k = topK;
    return this.request<{ job_id: string }>("/api/explain", body);
  }

  explainStatus(jobId: string): Promise<ExplainJobState> {
    return this.request<ExplainJobState>(`/api/explain/${jobId}`);
  }

  whatIf(text: string, maskedWords: string[]): Promise<WhatIfResponse> {
    return this.request<WhatIfResponse>("/api/whatif", {
      text,
      masked_words: maskedWords,
    });
  }
}
