/** Wire types of the backend API, mirrored verbatim. */

export interface Prediction {
  p_real: number;
  p_fake: number;
}

export interface PredictResponse extends Prediction {
  n_nodes: number;
  n_edges: number;
}

export interface MisleadingEntry {
  word: string;
  node_id: number;
  misleading_degree: number;
  masked_prediction: Prediction;
}

export interface ExplainResult extends PredictResponse {
  reference_class: number;
  entries: MisleadingEntry[];
}

export type JobStatus = "queued" | "running" | "done" | "failed";

export interface ExplainJobState {
  job_id: string;
  status: JobStatus;
  progress: number;
  stage: string;
  result: ExplainResult | null;
  error: string | null;
}

export interface WhatIfResponse {
  base: Prediction;
  masked: Prediction;
  delta_reference_class: number;
}

export const LABEL_NAMES = ["real", "fake"] as const;
