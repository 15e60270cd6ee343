/** Client-side mirror of the service's query preconditions, so the form can
 * refuse a request the server would reject with 422 before sending it. */

export const LEVELS = ["what-is", "what-if", "why", "retro"] as const;
export type Level = (typeof LEVELS)[number];

export const DENOMINATORS = ["last", "do"] as const;
export type Denominator = (typeof DENOMINATORS)[number];

export interface QueryDraft {
  level: Level;
  evidence: Record<string, string>;
  outcome: Record<string, string>;
  doTarget: { attribute: string; value: string } | null;
  denominator: Denominator;
}

export function emptyDraft(level: Level = "what-is"): QueryDraft {
  return { level, evidence: {}, outcome: {}, doTarget: null, denominator: "last" };
}

/** Parse the form's `attr=value, attr2=value2` syntax into a mapping. */
export function parseAssignments(text: string): Record<string, string> {
  const out: Record<string, string> = {};
  for (const part of text.split(",")) {
    const trimmed = part.trim();
    if (!trimmed) continue;
    const eq = trimmed.indexOf("=");
    if (eq < 1) throw new Error(`expected attribute=value, got '${trimmed}'`);
    out[trimmed.slice(0, eq).trim()] = trimmed.slice(eq + 1).trim();
  }
  return out;
}

/** Same rules the service enforces; empty array means the draft is sendable. */
export function validateDraft(draft: QueryDraft): string[] {
  const errors: string[] = [];
  if (!LEVELS.includes(draft.level)) {
    errors.push(`unknown query level '${draft.level}'`);
    return errors;
  }
  if (draft.level === "what-if") {
    if (draft.doTarget === null) errors.push("what-if queries require a do target");
    if (Object.keys(draft.outcome).length === 0) {
      errors.push("what-if queries require an outcome context");
    }
  }
  if (draft.level === "why" && Object.keys(draft.outcome).length === 0) {
    errors.push("why queries require a nonempty outcome vector");
  }
  if (draft.level === "retro") {
    if (
      Object.keys(draft.evidence).length === 0 ||
      Object.keys(draft.outcome).length === 0
    ) {
      errors.push("retro queries require nonempty evidence and outcome");
    }
  }
  return errors;
}

/** JSON body for POST /query. Call only after validateDraft returns []. */
export function toRequestBody(draft: QueryDraft): Record<string, unknown> {
  const body: Record<string, unknown> = {
    level: draft.level,
    denominator: draft.denominator,
  };
  if (Object.keys(draft.evidence).length > 0) body.evidence = draft.evidence;
  if (Object.keys(draft.outcome).length > 0) body.outcome = draft.outcome;
  if (draft.doTarget !== null) {
    body.do = { [draft.doTarget.attribute]: draft.doTarget.value };
  }
  return body;
}
