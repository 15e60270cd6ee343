import type { StreamFrame } from "./types.js";

/** Minimal surface of a WebSocket that the client needs; injectable so tests
 * can drive connections without a network. */
export interface SocketLike {
  onopen: (() => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export type StreamStatus = "connecting" | "open" | "closed";

export interface StreamOptions {
  socketFactory?: SocketFactory;
  /** Banner threshold: no frame for this long marks the stream stale. */
  staleAfterMs?: number;
  /** First reconnect delay; doubles per consecutive failure. */
  baseBackoffMs?: number;
  maxBackoffMs?: number;
}

/** Live connection to the service's frame stream with automatic reconnect
 * (exponential backoff) and staleness tracking. */
export class StreamClient {
  readonly staleAfterMs: number;
  readonly baseBackoffMs: number;
  readonly maxBackoffMs: number;

  onFrame: ((frame: StreamFrame) => void) | null = null;
  onStale: (() => void) | null = null;
  onLive: (() => void) | null = null;
  onStatus: ((status: StreamStatus) => void) | null = null;

  private readonly url: string;
  private readonly factory: SocketFactory;
  private socket: SocketLike | null = null;
  private staleTimer: ReturnType<typeof setTimeout> | null = null;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private failures = 0;
  private closed = false;
  private staleFlag = false;

  constructor(url: string, opts: StreamOptions = {}) {
    this.url = url;
    this.factory =
      opts.socketFactory ?? ((u) => new WebSocket(u) as unknown as SocketLike);
    this.staleAfterMs = opts.staleAfterMs ?? 5000;
    this.baseBackoffMs = opts.baseBackoffMs ?? 500;
    this.maxBackoffMs = opts.maxBackoffMs ?? 10_000;
  }

  get stale(): boolean {
    return this.staleFlag;
  }

  /** Delay before reconnect attempt number `failures` (1-based). */
  backoffMs(failures: number): number {
    return Math.min(this.baseBackoffMs * 2 ** (failures - 1), this.maxBackoffMs);
  }

  connect(): void {
    this.closed = false;
    this.onStatus?.("connecting");
    const sock = this.factory(this.url);
    this.socket = sock;
    sock.onopen = () => {
      this.failures = 0;
      this.onStatus?.("open");
      this.armStaleTimer();
    };
    sock.onmessage = (ev) => {
      this.armStaleTimer();
      if (this.staleFlag) {
        this.staleFlag = false;
        this.onLive?.();
      }
      let frame: StreamFrame;
      try {
        frame = JSON.parse(ev.data) as StreamFrame;
      } catch {
        return; // ignore malformed frames
      }
      this.onFrame?.(frame);
    };
    sock.onerror = () => {
      /* onclose always follows; reconnect is scheduled there */
    };
    sock.onclose = () => {
      if (this.socket !== sock) return; // superseded connection
      this.clearStaleTimer();
      this.onStatus?.("closed");
      if (this.closed) return;
      this.failures += 1;
      this.reconnectTimer = setTimeout(
        () => this.connect(),
        this.backoffMs(this.failures),
      );
    };
  }

  close(): void {
    this.closed = true;
    if (this.reconnectTimer !== null) clearTimeout(this.reconnectTimer);
    this.clearStaleTimer();
    this.socket?.close();
  }

  private armStaleTimer(): void {
    this.clearStaleTimer();
    this.staleTimer = setTimeout(() => {
      this.staleFlag = true;
      this.onStale?.();
    }, this.staleAfterMs);
  }

  private clearStaleTimer(): void {
    if (this.staleTimer !== null) {
      clearTimeout(this.staleTimer);
      this.staleTimer = null;
    }
  }
}
