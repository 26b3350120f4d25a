/**
 * Client state and its pure transitions.
 *
 * The state machine mirrors the backend flow: submit -> prediction ->
 * explain job (polled) -> ranked table -> optional what-if masking.
 * Transitions never compute any model numbers; they only carry API
 * responses into the state.
 */

import type {
  ExplainJobState,
  MisleadingEntry,
  PredictResponse,
  WhatIfResponse,
} from "./types.js";

export type Phase =
  | "idle"
  | "predicting"
  | "explaining"
  | "done"
  | "error";

export interface UiState {
  query: string;
  phase: Phase;
  error: string | null;
  warning: string | null;
  jobId: string | null;
  progress: number;
  stage: string;
  prediction: PredictResponse | null;
  referenceClass: number | null;
  entries: MisleadingEntry[] | null;
  maskedWords: string[];
  whatIf: WhatIfResponse | null;
  whatIfPending: boolean;
}

export function initialState(): UiState {
  return {
    query: "",
    phase: "idle",
    error: null,
    warning: null,
    jobId: null,
    progress: 0,
    stage: "",
    prediction: null,
    referenceClass: null,
    entries: null,
    maskedWords: [],
    whatIf: null,
    whatIfPending: false,
  };
}

// Mirror of the server tokenizer: lowercase alphanumeric runs with
// internal apostrophes. Used only to validate mask membership and to
// highlight masked words, never to compute anything numeric.
const WORD_RE = /[\p{L}\p{N}]+(?:'[\p{L}\p{N}]+)*/gu;

export function wordsOf(text: string): string[] {
  const normalized = text.toLowerCase().replace(/’/g, "'");
  return normalized.match(WORD_RE) ?? [];
}

export function beginSubmission(state: UiState, query: string): UiState {
  return {
    ...initialState(),
    query,
    phase: "predicting",
  };
}

export function applyPrediction(
  state: UiState,
  prediction: PredictResponse,
): UiState {
  return { ...state, prediction, phase: "explaining" };
}

export function applyJobStarted(state: UiState, jobId: string): UiState {
  return { ...state, jobId, progress: 0, stage: "queued" };
}

/** Progress is clamped monotone per job regardless of poll ordering. */
export function applyJobUpdate(state: UiState, job: ExplainJobState): UiState {
  return {
    ...state,
    progress: Math.max(state.progress, job.progress),
    stage: job.stage,
  };
}

export function applyJobDone(state: UiState, job: ExplainJobState): UiState {
  if (job.status === "failed" || job.result === null) {
    return applyError(state, job.error ?? "explanation job failed");
  }
  return {
    ...applyJobUpdate(state, job),
    phase: "done",
    referenceClass: job.result.reference_class,
    entries: job.result.entries,
  };
}

export function applyError(state: UiState, message: string): UiState {
  return { ...state, phase: "error", error: message };
}

export function setWarning(state: UiState, message: string | null): UiState {
  return { ...state, warning: message };
}

/**
 * Toggle one word in the active mask set. Only words of the submitted
 * query are maskable, and the what-if panel exists only once a base
 * prediction does.
 */
export function toggleMaskWord(state: UiState, word: string): UiState {
  if (state.prediction === null) return state;
  if (!wordsOf(state.query).includes(word)) return state;
  const maskedWords = state.maskedWords.includes(word)
    ? state.maskedWords.filter((w) => w !== word)
    : [...state.maskedWords, word];
  return { ...state, maskedWords, warning: null };
}

export function applyWhatIf(
  state: UiState,
  response: WhatIfResponse | null,
): UiState {
  return { ...state, whatIf: response, whatIfPending: false };
}
