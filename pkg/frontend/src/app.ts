/** DOM glue. All logic lives in the tested modules; this file only wires
 * them to elements in index.html. */

import { ApiClient } from "./api.js";
import { QueryController } from "./controller.js";
import { SessionHistory } from "./history.js";
import {
  emptyDraft,
  parseAssignments,
  validateDraft,
  type Denominator,
  type Level,
} from "./queryform.js";
import {
  renderAlert,
  renderGauge,
  renderResult,
  renderStaleBanner,
} from "./render.js";
import { StreamClient } from "./stream.js";
import type { PosteriorFrame } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function start(baseUrl: string = window.location.origin): void {
  const api = new ApiClient(baseUrl);
  const history = new SessionHistory();
  const controller = new QueryController(api, history);

  const gauges = el<HTMLDivElement>("gauges");
  const alertFeed = el<HTMLUListElement>("alerts");
  const banner = el<HTMLDivElement>("banner");
  const resultBox = el<HTMLDivElement>("result");
  const historyList = el<HTMLOListElement>("history");
  const form = el<HTMLFormElement>("query-form");
  const formErrors = el<HTMLDivElement>("form-errors");

  const latest = new Map<string, PosteriorFrame>();

  const wsUrl = baseUrl.replace(/^http/, "ws") + "/stream";
  const stream = new StreamClient(wsUrl);
  stream.onFrame = (frame) => {
    if (frame.type === "posterior") {
      latest.set(frame.payload.unit, frame.payload);
      gauges.innerHTML = [...latest.keys()]
        .sort()
        .map((u) => renderGauge(latest.get(u)!))
        .join("");
    } else {
      alertFeed.insertAdjacentHTML("afterbegin", renderAlert(frame.payload));
    }
  };
  stream.onStale = () => (banner.innerHTML = renderStaleBanner(true));
  stream.onLive = () => (banner.innerHTML = renderStaleBanner(false));
  stream.onStatus = (s) => banner.setAttribute("data-stream", s);
  stream.connect();

  const readDraft = () => {
    const draft = emptyDraft(
      (form.elements.namedItem("level") as HTMLSelectElement).value as Level,
    );
    draft.denominator = (
      form.elements.namedItem("denominator") as HTMLSelectElement
    ).value as Denominator;
    draft.evidence = parseAssignments(
      (form.elements.namedItem("evidence") as HTMLInputElement).value,
    );
    draft.outcome = parseAssignments(
      (form.elements.namedItem("outcome") as HTMLInputElement).value,
    );
    const doText = (form.elements.namedItem("do") as HTMLInputElement).value;
    const doMap = parseAssignments(doText);
    const keys = Object.keys(doMap);
    if (keys.length === 1) {
      draft.doTarget = { attribute: keys[0], value: doMap[keys[0]] };
    } else if (keys.length > 1) {
      throw new Error("do takes exactly one attribute=value pair");
    }
    return draft;
  };

  const showErrors = (errors: string[]) => {
    formErrors.textContent = errors.join("; ");
  };

  form.addEventListener("input", () => {
    try {
      showErrors(validateDraft(readDraft()));
    } catch (exc) {
      showErrors([(exc as Error).message]);
    }
  });

  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    void (async () => {
      let draft;
      try {
        draft = readDraft();
      } catch (exc) {
        showErrors([(exc as Error).message]);
        return;
      }
      const submitted = await controller.submit(draft);
      if (submitted.kind === "invalid") {
        showErrors(submitted.errors);
        return;
      }
      showErrors([]);
      const { outcome } = submitted;
      resultBox.innerHTML = outcome.ok
        ? renderResult(outcome.result)
        : `<div class="error">${outcome.error}</div>`;
      historyList.innerHTML = history.entries
        .map(
          (e, i) =>
            `<li data-index="${i}">${e.error ?? JSON.stringify(e.request)}</li>`,
        )
        .join("");
    })();
  });

  void api.alerts().then((signals) => {
    alertFeed.innerHTML = signals.map(renderAlert).join("");
  });
}
