import type { Snapshot, StatusFrame } from "./types.js";
import { TERMINAL_STATUSES } from "./types.js";

export interface FeedHandlers {
  onSnapshot(snapshot: Snapshot): void;
  onStatus(frame: StatusFrame): void;
  onConnectionChange?(connected: boolean): void;
}

export interface StreamSource {
  close(): void;
}

/** Abstraction over EventSource so tests can drive frames by hand.
 * onFrame receives the event kind, the frame's sequence id, and the
 * raw data payload. */
export type SourceFactory = (
  url: string,
  onFrame: (kind: string, seq: number, data: string) => void,
  onError: () => void,
) => StreamSource;

const eventSourceFactory: SourceFactory = (url, onFrame, onError) => {
  const source = new EventSource(url);
  for (const kind of ["snapshot", "status"]) {
    source.addEventListener(kind, (event) => {
      const message = event as MessageEvent<string>;
      onFrame(kind, Number(message.lastEventId), message.data);
    });
  }
  source.onerror = onError;
  return source;
};

/** Ordered frame consumer for one run. Tracks the last seen sequence id
 * and, after a connection error, resubscribes with ?since= so no frame
 * is missed or doubled. Stops for good once the run reaches a terminal
 * status; the page then flips to read-only. */
export class EventFeed {
  lastSeq = -1;
  private source: StreamSource | null = null;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;

  constructor(
    private readonly baseUrl: string,
    private readonly runId: string,
    private readonly handlers: FeedHandlers,
    private readonly factory: SourceFactory = eventSourceFactory,
    private readonly retryMs = 1000,
  ) {}

  start(): void {
    this.stopped = false;
    this.connect();
  }

  stop(): void {
    this.stopped = true;
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    this.source?.close();
    this.source = null;
  }

  private connect(): void {
    const url = `${this.baseUrl}/runs/${this.runId}/events?since=${this.lastSeq}`;
    this.source = this.factory(
      url,
      (kind, seq, data) => this.dispatch(kind, seq, data),
      () => this.handleError(),
    );
    this.handlers.onConnectionChange?.(true);
  }

  private dispatch(kind: string, seq: number, data: string): void {
    if (seq <= this.lastSeq) return; // replayed duplicate
    this.lastSeq = seq;
    if (kind === "snapshot") {
      this.handlers.onSnapshot(JSON.parse(data) as Snapshot);
      return;
    }
    const frame = JSON.parse(data) as StatusFrame;
    this.handlers.onStatus(frame);
    if (TERMINAL_STATUSES.includes(frame.status)) {
      this.stop();
    }
  }

  private handleError(): void {
    if (this.stopped) return;
    this.source?.close();
    this.source = null;
    this.handlers.onConnectionChange?.(false);
    this.reconnectTimer = setTimeout(() => {
      this.reconnectTimer = null;
      if (!this.stopped) this.connect();
    }, this.retryMs);
  }
}
