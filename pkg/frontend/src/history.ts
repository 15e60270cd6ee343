import type { QueryResult } from "./types.js";

export interface HistoryEntry {
  at: number;
  request: Record<string, unknown>;
  result: QueryResult | null;
  error: string | null;
}

/** Append-only log of every query issued this session. Entries can never be
 * edited or removed; `entries` hands out defensive copies. */
export class SessionHistory {
  private readonly log: HistoryEntry[] = [];

  append(entry: HistoryEntry): void {
    this.log.push(Object.freeze({ ...entry }));
  }

  get entries(): readonly HistoryEntry[] {
    return [...this.log];
  }

  get length(): number {
    return this.log.length;
  }
}
