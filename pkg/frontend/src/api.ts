/** Thin HTTP client for the prediction service.
 *
 * The UI performs no inference and no payload decoding of its own; the
 * only endpoints it ever talks to are POST /api/v1/predict and
 * GET /api/v1/health.  Every request is appended to `requestLog` so
 * tests (and the curious) can verify that property.
 */

import type { HealthResponse, PredictResponse, ServiceError } from "./types";

export const MAX_IMAGE_BYTES = 8 * 1024 * 1024;

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export interface LoggedRequest {
  method: string;
  url: string;
}

/** Raised when the service answers with a structured error body. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly reason: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  readonly requestLog: LoggedRequest[] = [];

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request(
    method: string,
    path: string,
    init?: RequestInit,
  ): Promise<Response> {
    const url = `${this.baseUrl}${path}`;
    this.requestLog.push({ method, url });
    return this.fetchImpl(url, { ...init, method });
  }

  async health(): Promise<HealthResponse> {
    const response = await this.request("GET", "/api/v1/health");
    if (!response.ok) {
      throw new ApiError(response.status, "service_unavailable",
        `health check failed with status ${response.status}`);
    }
    return (await response.json()) as HealthResponse;
  }

  async predict(
    image: ArrayBuffer | Uint8Array,
    signal?: AbortSignal,
  ): Promise<PredictResponse> {
    const bytes = image instanceof Uint8Array
      ? image
      : new Uint8Array(image);
    if (bytes.byteLength > MAX_IMAGE_BYTES) {
      throw new ApiError(0, "oversized_body",
        `image exceeds ${MAX_IMAGE_BYTES} bytes`);
    }
    const response = await this.request("POST", "/api/v1/predict", {
      body: bytes as unknown as BodyInit,
      headers: { "content-type": "image/png" },
      signal,
    });
    if (!response.ok) {
      let reason = "unknown";
      let message = `request failed with status ${response.status}`;
      try {
        const body = (await response.json()) as ServiceError;
        reason = body.reason ?? reason;
        message = body.message ?? message;
      } catch {
        // non-JSON error body: keep the generic message
      }
      throw new ApiError(response.status, reason, message);
    }
    return (await response.json()) as PredictResponse;
  }
}
