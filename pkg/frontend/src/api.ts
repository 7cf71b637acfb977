// Thin typed client for the engine's JSON API.  Every call is stateless and
// carries the full board; domain-negative outcomes (unsolvable boards) are
// 200 responses with solvable=false, so only transport or request-shape
// problems throw ApiError.

import type { Grid } from "./engine";

export type SpecTuple = [number, number, number]; // [n, m, b]

export type CheckItem = { name: string; passed: boolean };

export type CheckResponse = {
  ok: true;
  solvable: boolean;
  branch: string;
  checks: CheckItem[];
};

export type SolveResponse =
  | { ok: true; solvable: true; branch: string; moves: string; stats: Record<string, unknown> }
  | { ok: true; solvable: false; branch: string; checks: CheckItem[] };

export type HintResponse =
  | { ok: true; solvable: true; moves: string; remaining: number }
  | { ok: true; solvable: false; branch: string; checks: CheckItem[] };

export type ApplyResponse = { ok: true; spec: SpecTuple; grid: Grid; solved: boolean };

export type ScrambleResponse = { ok: true; spec: SpecTuple; grid: Grid; moves: string };

export type SpecsResponse = { ok: true; specs: SpecTuple[] };

export class ApiError extends Error {
  readonly status: number;
  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function request<T>(base: string, path: string, body?: unknown): Promise<T> {
  const res = await fetch(base + path, {
    method: body === undefined ? "GET" : "POST",
    headers: body === undefined ? undefined : { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  let payload: unknown;
  try {
    payload = await res.json();
  } catch {
    throw new ApiError(res.status, `non-JSON response (HTTP ${res.status})`);
  }
  if (!res.ok) {
    const message =
      typeof payload === "object" && payload !== null && "error" in payload
        ? String((payload as { error: unknown }).error)
        : `HTTP ${res.status}`;
    throw new ApiError(res.status, message);
  }
  return payload as T;
}

/** Client pinned to one server base URL, e.g. "http://127.0.0.1:8000". */
export class ApiClient {
  constructor(readonly base: string = "") {}

  specs(): Promise<SpecsResponse> {
    return request(this.base, "/api/specs");
  }

  scramble(spec: SpecTuple, seed: number, k: number): Promise<ScrambleResponse> {
    return request(this.base, "/api/scramble", { spec, seed, k });
  }

  check(spec: SpecTuple, grid: Grid): Promise<CheckResponse> {
    return request(this.base, "/api/check", { spec, grid });
  }

  solve(spec: SpecTuple, grid: Grid): Promise<SolveResponse> {
    return request(this.base, "/api/solve", { spec, grid });
  }

  hint(spec: SpecTuple, grid: Grid, count = 1): Promise<HintResponse> {
    return request(this.base, "/api/hint", { spec, grid, count });
  }

  apply(spec: SpecTuple, grid: Grid, moves: string): Promise<ApplyResponse> {
    return request(this.base, "/api/apply", { spec, grid, moves });
  }
}
