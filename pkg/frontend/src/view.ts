/** Pure presentation logic: every function maps service data to plain
 * strings/structures so it can be unit-tested without a DOM.  The DOM
 * layer in main.ts only injects these strings. */

import type { PredictResponse } from "./types";
import {
  FEATURE_ORDER,
  NUM_PROTOCOL_FEATURES,
  UNSUPPORTED_QR_REASONS,
} from "./types";

export interface Banner {
  tone: "green" | "red";
  headline: string;
  confidenceText: string;
}

/** Confidence shown to the user: the service's value rounded to a whole
 * percent — never recomputed locally. */
export function formatConfidence(confidence: number): string {
  return `${Math.round(confidence * 100)}%`;
}

export function verdictBanner(response: PredictResponse): Banner {
  const confidenceText = formatConfidence(response.confidence);
  if (response.label === "legitimate") {
    return {
      tone: "green",
      headline: "Legitimate QR code",
      confidenceText,
    };
  }
  return {
    tone: "red",
    headline: "Phishing QR code",
    confidenceText,
  };
}

export interface ErrorNotice {
  title: string;
  detail: string;
  retryable: boolean;
}

export function errorNotice(
  status: number,
  reason: string,
  message: string,
): ErrorNotice {
  if (status === 422 || UNSUPPORTED_QR_REASONS.includes(reason)) {
    return {
      title: "Unsupported or stylized QR code",
      detail:
        `The image could not be read as a plain black-and-white QR ` +
        `symbol (${reason}). Try a flat, uncropped photo of a standard ` +
        `code. ${message}`,
      retryable: false,
    };
  }
  if (status === 0) {
    return {
      title: "Service unreachable",
      detail: `${message} — check the connection and try again.`,
      retryable: true,
    };
  }
  return {
    title: "Scan failed",
    detail: `${message} (${reason})`,
    retryable: true,
  };
}

export interface FeatureRow {
  name: string;
  value: string;
  group: "protocol" | "statistical";
}

const INTEGER_FEATURES = new Set([
  "version",
  "ecc_level",
  "masking_pattern",
  "num_alignment_patterns",
  "required_remainder_bits",
  "num_white",
  "num_black",
  "row_transitions_total",
  "col_transitions_total",
  "row_hist_peaks",
  "col_hist_peaks",
]);

/** Rows in canonical schema order, grouped protocol-first. */
export function featureTable(
  features: Record<string, number>,
): FeatureRow[] {
  return FEATURE_ORDER.map((name, index) => {
    const value = features[name];
    return {
      name,
      value: INTEGER_FEATURES.has(name)
        ? String(value)
        : value.toFixed(4),
      group: index < NUM_PROTOCOL_FEATURES ? "protocol" : "statistical",
    };
  });
}
