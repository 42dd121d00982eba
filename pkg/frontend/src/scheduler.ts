import { PruneDoc } from "./types.js";

export type PruneRequest = (alpha: number, fixDeg: string) => Promise<PruneDoc>;

/**
 * Serializes significance queries from the alpha slider and the null-model
 * selector. Slider movement is debounced so each settled value issues
 * exactly one request, and responses carry a sequence number so a stale
 * answer (superseded while in flight) is dropped instead of rendered.
 */
export class PruneScheduler {
  private seq = 0;
  private applied = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private pendingAlpha: number;
  private pendingFixDeg: string;

  constructor(
    private send: PruneRequest,
    private onResult: (doc: PruneDoc) => void,
    private onError: (err: unknown) => void = () => undefined,
    private debounceMs = 200,
  ) {
    this.pendingAlpha = 0.05;
    this.pendingFixDeg = "none";
  }

  setAlpha(alpha: number): void {
    this.pendingAlpha = alpha;
    this.schedule();
  }

  setFixDeg(fixDeg: string): void {
    this.pendingFixDeg = fixDeg;
    this.schedule();
  }

  /** Issue the pending request immediately (used on initial load). */
  flush(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.fire();
  }

  private schedule(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      this.fire();
    }, this.debounceMs);
  }

  private fire(): void {
    const ticket = ++this.seq;
    this.send(this.pendingAlpha, this.pendingFixDeg).then(
      (doc) => {
        if (ticket > this.applied) {
          this.applied = ticket;
          this.onResult(doc);
        }
      },
      (err) => {
        if (ticket > this.applied) {
          this.onError(err);
        }
      },
    );
  }
}
