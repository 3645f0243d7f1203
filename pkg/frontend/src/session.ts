/** In-memory scan session: one in-flight prediction at a time, a
 * bounded history of verdicts, nothing persisted anywhere. */

import { ApiClient, ApiError } from "./api";
import type { PredictResponse } from "./types";

export const HISTORY_LIMIT = 20;

export type ScanSource = "camera" | "upload";

export interface ScanOutcome {
  source: ScanSource;
  at: number;
  result:
    | { kind: "verdict"; response: PredictResponse }
    | { kind: "error"; status: number; reason: string; message: string };
}

export class ScanSession {
  readonly history: ScanOutcome[] = [];
  private inFlight: AbortController | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly now: () => number = Date.now,
  ) {}

  get busy(): boolean {
    return this.inFlight !== null;
  }

  /** Submit one image.  A submission while another is pending cancels
   * the pending one; only the newest result is ever rendered. */
  async scan(
    image: ArrayBuffer | Uint8Array,
    source: ScanSource,
  ): Promise<ScanOutcome | null> {
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    let outcome: ScanOutcome;
    try {
      const response = await this.client.predict(image, controller.signal);
      outcome = {
        source,
        at: this.now(),
        result: { kind: "verdict", response },
      };
    } catch (error) {
      if (controller.signal.aborted) {
        return null; // superseded by a newer scan
      }
      if (error instanceof ApiError) {
        outcome = {
          source,
          at: this.now(),
          result: {
            kind: "error",
            status: error.status,
            reason: error.reason,
            message: error.message,
          },
        };
      } else {
        outcome = {
          source,
          at: this.now(),
          result: {
            kind: "error",
            status: 0,
            reason: "network_error",
            message: error instanceof Error ? error.message : String(error),
          },
        };
      }
    }
    if (controller.signal.aborted) {
      return null;
    }
    if (this.inFlight === controller) {
      this.inFlight = null;
    }
    this.history.push(outcome);
    while (this.history.length > HISTORY_LIMIT) {
      this.history.shift();
    }
    return outcome;
  }
}
