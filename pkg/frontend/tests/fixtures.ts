/** Payloads recorded verbatim from a running service (JSON as returned by
 * POST /query and the event stream). Tests string-compare rendered output
 * against these, proving the console never recomputes a probability. */

export const RECORDED_WHAT_IS = JSON.parse(
  `{"level":"association","raw_scores":{"c0":0.27272727272727276,"c1":0.7272727272727273},` +
    `"normalized_scores":{"c0":0.27272727272727276,"c1":0.7272727272727273},` +
    `"correction_terms":{"c0":0.0,"c1":0.0},"correction_parts":{},"out_of_range":false}`,
);

export const RECORDED_WHAT_IF = JSON.parse(
  `{"correction_parts": {}, "correction_terms": {"calm": 0.18181818181818182, ` +
    `"strike": 0.6363636363636362}, "level": "intervention", "normalized_scores": ` +
    `{"calm": 0.38480741797432244, "strike": 0.6151925820256776}, "out_of_range": true, ` +
    `"raw_scores": {"calm": 0.6996498508624045, "strike": 1.1185319673194138}}`,
);

export const RECORDED_RETRO = JSON.parse(
  `{"correction_parts": {"calm": {"evidence": -0.0, "outcome": 0.6363636363636362}, ` +
    `"strike": {"evidence": -0.5555555555555556, "outcome": 0.0}}, "correction_terms": ` +
    `{"calm": 0.6363636363636362, "strike": -0.5555555555555556}, "level": "combined", ` +
    `"normalized_scores": {"calm": 0.6885223456287973, "strike": 0.3114776543712027}, ` +
    `"out_of_range": false, "raw_scores": {"calm": 0.7441605149725384, ` +
    `"strike": 0.33664756583554223}}`,
);

export const RECORDED_POSTERIOR_FRAME = JSON.parse(
  `{"type": "posterior", "payload": {"unit": "u1", "ts": 100, ` +
    `"scores": {"c0": 0.27272727272727276, "c1": 0.7272727272727273}}}`,
);

export const RECORDED_SIGNAL_FRAME = JSON.parse(
  `{"type": "signal", "payload": {"unit": "u1", "ts": 103, ` +
    `"severity": 0.7702702702702703, "streak": 3, "escalated_to": null}}`,
);
