// Thin typed client for the posetlab v1 HTTP API.

import type {
  BestMoveResponse,
  PosetDoc,
  SolveResponse,
  WhatIfResponse,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    message: string,
    public status: number,
    public code: string,
  ) {
    super(message);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (response.ok) return (await response.json()) as T;
  let code = "http_error";
  let message = `service returned ${response.status}`;
  try {
    const body = await response.json();
    code = body?.error?.code ?? code;
    message = body?.error?.message ?? message;
  } catch {
    // non-JSON error body; keep the defaults
  }
  throw new ServiceError(message, response.status, code);
}

export class ServiceClient {
  constructor(private baseUrl: string) {}

  private post<T>(path: string, body: unknown): Promise<T> {
    return fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => unwrap<T>(r));
  }

  health(): Promise<{ status: string }> {
    return fetch(`${this.baseUrl}/v1/health`).then((r) => unwrap(r));
  }

  generate(family: string, params: string): Promise<PosetDoc> {
    const query = new URLSearchParams({ family, params });
    return fetch(`${this.baseUrl}/v1/generate?${query}`).then((r) => unwrap(r));
  }

  solve(poset: PosetDoc): Promise<SolveResponse> {
    return this.post("/v1/solve", { poset });
  }

  bestMove(poset: PosetDoc, toMove?: string): Promise<BestMoveResponse> {
    return this.post("/v1/bestmove", { poset, toMove });
  }

  whatIf(
    poset: PosetDoc,
    move: string,
    toMove?: string,
    budget?: { max_positions?: number; max_millis?: number },
  ): Promise<WhatIfResponse> {
    return this.post("/v1/whatif", { poset, move, toMove, budget });
  }
}
