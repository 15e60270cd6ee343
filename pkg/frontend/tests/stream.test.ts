import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { StreamClient, type SocketLike } from "../src/stream.js";

class FakeSocket implements SocketLike {
  onopen: (() => void) | null = null;
  onmessage: ((ev: { data: string }) => void) | null = null;
  onclose: (() => void) | null = null;
  onerror: (() => void) | null = null;
  closedByClient = false;
  close(): void {
    this.closedByClient = true;
    this.onclose?.();
  }
  open(): void {
    this.onopen?.();
  }
  push(frame: unknown): void {
    this.onmessage?.({ data: JSON.stringify(frame) });
  }
  drop(): void {
    this.onclose?.();
  }
}

function makeClient(opts: Record<string, unknown> = {}) {
  const sockets: FakeSocket[] = [];
  const client = new StreamClient("ws://test/stream", {
    socketFactory: () => {
      const s = new FakeSocket();
      sockets.push(s);
      return s;
    },
    ...opts,
  });
  return { client, sockets };
}

describe("StreamClient", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("delivers parsed frames in order", () => {
    const { client, sockets } = makeClient();
    const seen: unknown[] = [];
    client.onFrame = (f) => seen.push(f);
    client.connect();
    sockets[0].open();
    sockets[0].push({ type: "posterior", payload: { unit: "u1" } });
    sockets[0].push({ type: "signal", payload: { unit: "u1", streak: 3 } });
    expect(seen).toEqual([
      { type: "posterior", payload: { unit: "u1" } },
      { type: "signal", payload: { unit: "u1", streak: 3 } },
    ]);
  });

  it("marks the stream stale after 5s without frames and live again on the next frame", () => {
    const { client, sockets } = makeClient();
    const transitions: string[] = [];
    client.onStale = () => transitions.push("stale");
    client.onLive = () => transitions.push("live");
    client.connect();
    sockets[0].open();
    vi.advanceTimersByTime(4999);
    expect(client.stale).toBe(false);
    vi.advanceTimersByTime(1);
    expect(client.stale).toBe(true);
    expect(transitions).toEqual(["stale"]);
    sockets[0].push({ type: "posterior", payload: {} });
    expect(client.stale).toBe(false);
    expect(transitions).toEqual(["stale", "live"]);
  });

  it("a steady stream of frames never goes stale", () => {
    const { client, sockets } = makeClient();
    client.connect();
    sockets[0].open();
    for (let i = 0; i < 10; i++) {
      vi.advanceTimersByTime(3000);
      sockets[0].push({ type: "posterior", payload: {} });
    }
    expect(client.stale).toBe(false);
  });

  it("reconnects with exponential backoff and caps the delay", () => {
    const { client, sockets } = makeClient({ baseBackoffMs: 500, maxBackoffMs: 4000 });
    client.connect();
    expect(sockets.length).toBe(1);
    // each drop schedules the next attempt after 500, 1000, 2000, 4000, 4000ms
    const expected = [500, 1000, 2000, 4000, 4000];
    for (let i = 0; i < expected.length; i++) {
      sockets[i].drop();
      vi.advanceTimersByTime(expected[i] - 1);
      expect(sockets.length).toBe(i + 1);
      vi.advanceTimersByTime(1);
      expect(sockets.length).toBe(i + 2);
    }
  });

  it("a successful open resets the backoff", () => {
    const { client, sockets } = makeClient({ baseBackoffMs: 500 });
    client.connect();
    sockets[0].drop();
    vi.advanceTimersByTime(500);
    sockets[1].drop();
    vi.advanceTimersByTime(1000);
    sockets[2].open();
    sockets[2].drop();
    // back to the base delay
    vi.advanceTimersByTime(499);
    expect(sockets.length).toBe(3);
    vi.advanceTimersByTime(1);
    expect(sockets.length).toBe(4);
  });

  it("close() stops reconnecting", () => {
    const { client, sockets } = makeClient();
    client.connect();
    sockets[0].open();
    client.close();
    vi.advanceTimersByTime(60_000);
    expect(sockets.length).toBe(1);
    expect(sockets[0].closedByClient).toBe(true);
  });

  it("ignores malformed frames without dying", () => {
    const { client, sockets } = makeClient();
    const seen: unknown[] = [];
    client.onFrame = (f) => seen.push(f);
    client.connect();
    sockets[0].open();
    sockets[0].onmessage?.({ data: "{not json" });
    sockets[0].push({ type: "posterior", payload: {} });
    expect(seen.length).toBe(1);
  });
});
