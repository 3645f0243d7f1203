/** Shared types mirroring the prediction service's JSON contract. */

export type Verdict = "legitimate" | "phishing";

export interface PredictResponse {
  label: Verdict;
  confidence: number;
  features: Record<string, number>;
  timing_ms: Record<string, number>;
  model_id: string;
}

export interface ServiceError {
  reason: string;
  message: string;
}

export interface HealthResponse {
  status: string;
  model_id: string;
  model_kind: string;
  kernels: string;
  version: string;
}

/** Canonical feature order shared with the service's CSV schema. */
export const FEATURE_ORDER: readonly string[] = [
  "version",
  "ecc_level",
  "masking_pattern",
  "num_alignment_patterns",
  "required_remainder_bits",
  "num_white",
  "num_black",
  "black_white_ratio",
  "density",
  "mean_density",
  "std_density_row",
  "std_density_col",
  "row_transitions_total",
  "col_transitions_total",
  "entropy",
  "vertical_asymmetry",
  "horizontal_asymmetry",
  "tl_density",
  "tr_density",
  "bl_density",
  "br_density",
  "center_density",
  "row_hist_peaks",
  "col_hist_peaks",
];

/** The first five features are protocol-level; the rest statistical. */
export const NUM_PROTOCOL_FEATURES = 5;

/** Error reasons the service reports for images that are not a plain,
 * machine-usable black-and-white QR symbol. */
export const UNSUPPORTED_QR_REASONS: readonly string[] = [
  "image_too_small",
  "no_black_pixel",
  "implausible_module_size",
  "invalid_side_count",
  "format_unrecoverable",
  "degenerate_grid",
];
