import type { QueryResult, Report, SignalFrame, UnitStatus } from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export type QueryOutcome =
  | { ok: true; result: QueryResult }
  | { ok: false; status: number; error: string };

/** Thin typed wrapper over the service's HTTP endpoints. */
export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.base = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? (fetch as unknown as FetchLike);
  }

  async query(body: Record<string, unknown>): Promise<QueryOutcome> {
    const res = await this.fetchImpl(`${this.base}/query`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = (await res.json()) as Record<string, unknown>;
    if (res.status === 200) return { ok: true, result: payload as unknown as QueryResult };
    return {
      ok: false,
      status: res.status,
      error: String(payload.error ?? `unexpected status ${res.status}`),
    };
  }

  async alerts(since?: number): Promise<SignalFrame[]> {
    const qs = since === undefined ? "" : `?since=${since}`;
    const res = await this.fetchImpl(`${this.base}/alerts${qs}`);
    return (await res.json()) as SignalFrame[];
  }

  async report(): Promise<Report> {
    const res = await this.fetchImpl(`${this.base}/report`);
    return (await res.json()) as Report;
  }

  async unitStatus(unit: string): Promise<UnitStatus | null> {
    const res = await this.fetchImpl(`${this.base}/units/${encodeURIComponent(unit)}/status`);
    if (res.status !== 200) return null;
    return (await res.json()) as UnitStatus;
  }
}
