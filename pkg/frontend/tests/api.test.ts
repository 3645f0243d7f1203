import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, MAX_IMAGE_BYTES } from "../src/api";
import type { FetchLike } from "../src/api";
import type { PredictResponse } from "../src/types";

const SAMPLE_RESPONSE: PredictResponse = {
  label: "legitimate",
  confidence: 0.6077,
  features: { version: 2, density: 0.512 },
  timing_ms: { total: 12.5 },
  model_id: "abcdef0123456789",
};

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function clientWith(fetchImpl: FetchLike): ApiClient {
  return new ApiClient("http://svc", fetchImpl);
}

describe("ApiClient", () => {
  it("only ever calls the predict and health endpoints", async () => {
    const urls: string[] = [];
    const client = clientWith(async (url) => {
      urls.push(url);
      if (url.endsWith("/health")) {
        return jsonResponse(200, {
          status: "ok", model_id: "m", model_kind: "gbdt",
          kernels: "compiled", version: "1.0",
        });
      }
      return jsonResponse(200, SAMPLE_RESPONSE);
    });
    await client.health();
    await client.predict(new Uint8Array([1, 2, 3]));
    await client.predict(new Uint8Array([4, 5]));

    expect(client.requestLog).toEqual([
      { method: "GET", url: "http://svc/api/v1/health" },
      { method: "POST", url: "http://svc/api/v1/predict" },
      { method: "POST", url: "http://svc/api/v1/predict" },
    ]);
    const allowed = new Set([
      "http://svc/api/v1/health",
      "http://svc/api/v1/predict",
    ]);
    for (const url of urls) {
      expect(allowed.has(url)).toBe(true);
    }
  });

  it("returns the parsed verdict on success", async () => {
    const client = clientWith(async () =>
      jsonResponse(200, SAMPLE_RESPONSE));
    const result = await client.predict(new Uint8Array([1]));
    expect(result.label).toBe("legitimate");
    expect(result.confidence).toBe(0.6077);
  });

  it("sends the image bytes with an image/png content type", async () => {
    let captured: RequestInit | undefined;
    const client = clientWith(async (_url, init) => {
      captured = init;
      return jsonResponse(200, SAMPLE_RESPONSE);
    });
    await client.predict(new Uint8Array([9, 9, 9]));
    expect(captured?.method).toBe("POST");
    expect((captured?.headers as Record<string, string>)["content-type"])
      .toBe("image/png");
    expect((captured?.body as Uint8Array).byteLength).toBe(3);
  });

  it("surfaces structured 422 errors with reason and message", async () => {
    const client = clientWith(async () =>
      jsonResponse(422, {
        reason: "invalid_side_count",
        message: "side count 24 is not a valid symbol size",
      }));
    const error = await client.predict(new Uint8Array([1]))
      .catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBe(422);
    expect((error as ApiError).reason).toBe("invalid_side_count");
    expect((error as ApiError).message).toContain("side count 24");
  });

  it("keeps a generic message when the error body is not JSON", async () => {
    const client = clientWith(async () =>
      new Response("boom", { status: 500 }));
    const error = await client.predict(new Uint8Array([1]))
      .catch((e: unknown) => e);
    expect((error as ApiError).status).toBe(500);
    expect((error as ApiError).reason).toBe("unknown");
  });

  it("rejects oversized images before any network call", async () => {
    let called = false;
    const client = clientWith(async () => {
      called = true;
      return jsonResponse(200, SAMPLE_RESPONSE);
    });
    const big = new Uint8Array(MAX_IMAGE_BYTES + 1);
    const error = await client.predict(big).catch((e: unknown) => e);
    expect((error as ApiError).reason).toBe("oversized_body");
    expect(called).toBe(false);
    expect(client.requestLog).toHaveLength(0);
  });
});
