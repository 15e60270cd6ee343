/** Shapes of the payloads the monitoring service emits. The console never
 * recomputes any of these numbers; it renders them as received. */

export type Scores = Record<string, number>;

export interface QueryResult {
  level: string;
  raw_scores: Scores;
  normalized_scores: Scores;
  correction_terms: Scores;
  correction_parts: Record<string, Scores>;
  out_of_range: boolean;
}

export interface PosteriorFrame {
  unit: string;
  ts: number;
  scores: Scores;
}

export interface SignalFrame {
  unit: string;
  ts: number;
  severity: number;
  streak: number;
  escalated_to: string | null;
}

export type StreamFrame =
  | { type: "posterior"; payload: PosteriorFrame }
  | { type: "signal"; payload: SignalFrame };

export interface UnitStatus {
  unit: string;
  level: number;
  streak: number;
  window: Scores[];
  aggregated: Scores | null;
}

export interface Report {
  timestamp: number;
  unit_posteriors: Record<string, Scores>;
  active_signals: SignalFrame[];
  query_answers: unknown[];
  advisory_only: boolean;
}
