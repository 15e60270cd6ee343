/** Pure HTML-string renderers. Every probability shown in the console comes
 * straight from a server payload; `formatScore` only stringifies, it never
 * rounds, normalizes, or otherwise computes. */

import type { PosteriorFrame, QueryResult, SignalFrame, Scores } from "./types.js";

export function formatScore(value: number): string {
  return String(value);
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function sortedClasses(scores: Scores): string[] {
  return Object.keys(scores).sort();
}

/** Raw and normalized scores side by side, one row per class. */
export function renderScoreTable(result: QueryResult): string {
  const rows = sortedClasses(result.raw_scores)
    .map(
      (c) =>
        `<tr><td class="cls">${escapeHtml(c)}</td>` +
        `<td class="raw">${formatScore(result.raw_scores[c])}</td>` +
        `<td class="norm">${formatScore(result.normalized_scores[c])}</td></tr>`,
    )
    .join("");
  return (
    `<table class="scores"><thead><tr>` +
    `<th>class</th><th>raw</th><th>normalized</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

export function renderOutOfRangeBadge(result: QueryResult): string {
  return result.out_of_range
    ? `<span class="badge out-of-range">out of range</span>`
    : "";
}

export function renderResult(result: QueryResult): string {
  return (
    `<div class="result"><span class="level">${escapeHtml(result.level)}</span>` +
    renderOutOfRangeBadge(result) +
    renderScoreTable(result) +
    `</div>`
  );
}

/** Horizontal bar per class, width from the server's posterior verbatim. */
export function renderGauge(frame: PosteriorFrame, distressClass?: string): string {
  const bars = sortedClasses(frame.scores)
    .map((c) => {
      const v = frame.scores[c];
      const distress = c === distressClass ? " distress" : "";
      return (
        `<div class="bar${distress}" data-class="${escapeHtml(c)}">` +
        `<span class="fill" style="width:${v * 100}%"></span>` +
        `<span class="value">${formatScore(v)}</span></div>`
      );
    })
    .join("");
  return (
    `<div class="gauge" data-unit="${escapeHtml(frame.unit)}" data-ts="${frame.ts}">` +
    `<span class="unit">${escapeHtml(frame.unit)}</span>${bars}</div>`
  );
}

export function renderAlert(signal: SignalFrame): string {
  const hop =
    signal.escalated_to === null
      ? ""
      : ` <span class="hop">&rarr; ${escapeHtml(signal.escalated_to)}</span>`;
  return (
    `<li class="alert" data-ts="${signal.ts}">` +
    `<span class="unit">${escapeHtml(signal.unit)}</span>` +
    `<span class="severity">${formatScore(signal.severity)}</span>` +
    `<span class="streak">streak ${signal.streak}</span>${hop}</li>`
  );
}

export function renderStaleBanner(visible: boolean): string {
  return visible
    ? `<div class="banner stale">stream stale &mdash; no frames received recently</div>`
    : "";
}
