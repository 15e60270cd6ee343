import type { ApiClient, QueryOutcome } from "./api.js";
import { SessionHistory } from "./history.js";
import { toRequestBody, validateDraft, type QueryDraft } from "./queryform.js";

export type SubmitOutcome =
  | { kind: "invalid"; errors: string[] }
  | { kind: "answered"; outcome: QueryOutcome };

/** Validates a draft, sends it, and records the round trip in the history. */
export class QueryController {
  constructor(
    private readonly api: ApiClient,
    readonly history: SessionHistory,
    private readonly now: () => number = Date.now,
  ) {}

  async submit(draft: QueryDraft): Promise<SubmitOutcome> {
    const errors = validateDraft(draft);
    if (errors.length > 0) return { kind: "invalid", errors };
    const request = toRequestBody(draft);
    const outcome = await this.api.query(request);
    this.history.append({
      at: this.now(),
      request,
      result: outcome.ok ? outcome.result : null,
      error: outcome.ok ? null : outcome.error,
    });
    return { kind: "answered", outcome };
  }
}
