/**
 * Application wiring: one submission flows through predict, an explain
 * job polled to completion, and optional what-if mask toggles. One
 * explain job is in flight at a time; what-if requests are serialized
 * behind a pending flag.
 */

import { Api, ApiError } from "./api.js";
import { render } from "./render.js";
import {
  applyError,
  applyJobDone,
  applyJobStarted,
  applyJobUpdate,
  applyPrediction,
  applyWhatIf,
  beginSubmission,
  initialState,
  setWarning,
  toggleMaskWord,
  type UiState,
} from "./state.js";

export interface AppOptions {
  pollIntervalMs?: number;
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export class App {
  private doc: Document;
  private api: Api;
  private pollIntervalMs: number;
  private state: UiState = initialState();

  constructor(doc: Document, api: Api, options: AppOptions = {}) {
    this.doc = doc;
    this.api = api;
    this.pollIntervalMs = options.pollIntervalMs ?? 1000;
    const submitBtn = doc.getElementById("submit-btn");
    submitBtn?.addEventListener("click", () => {
      void this.submitFromTextarea();
    });
    const sampleBtn = doc.getElementById("sample-btn");
    sampleBtn?.addEventListener("click", () => {
      void this.loadSample();
    });
    this.render();
  }

  getState(): UiState {
    return this.state;
  }

  private setState(state: UiState): void {
    this.state = state;
    this.render();
  }

  private render(): void {
    render(this.doc, this.state, {
      onToggleMask: (word) => void this.toggleMask(word),
    });
  }

  private textarea(): HTMLTextAreaElement {
    return this.doc.getElementById("query-input") as HTMLTextAreaElement;
  }

  async loadSample(): Promise<void> {
    const resp = await fetch("sample_article.txt");
    this.textarea().value = await resp.text();
  }

  async submitFromTextarea(): Promise<void> {
    const text = this.textarea().value;
    if (!text.trim()) {
      this.setState(setWarning(this.state, "enter an article first"));
      return;
    }
    await this.submit(text);
  }

  /** Full submission flow; resolves once the explain job finishes. */
  async submit(text: string): Promise<void> {
    if (this.state.phase === "predicting" || this.state.phase === "explaining") {
      return;
    }
    this.setState(beginSubmission(this.state, text));
    try {
      const prediction = await this.api.predict(text);
      this.setState(applyPrediction(this.state, prediction));
      const { job_id } = await this.api.startExplain(text);
      this.setState(applyJobStarted(this.state, job_id));
      for (;;) {
        const job = await this.api.explainStatus(job_id);
        if (job.status === "done" || job.status === "failed") {
          this.setState(applyJobDone(this.state, job));
          break;
        }
        this.setState(applyJobUpdate(this.state, job));
        await sleep(this.pollIntervalMs);
      }
    } catch (err) {
      const message =
        err instanceof ApiError
          ? `server error: ${err.message}`
          : `cannot reach the server (${String(err)})`;
      this.setState(applyError(this.state, message));
    }
  }

  /** Toggle one word's mask and refresh the what-if panel. */
  async toggleMask(word: string): Promise<void> {
    if (this.state.whatIfPending) return;
    const next = toggleMaskWord(this.state, word);
    if (next === this.state) return;
    if (next.maskedWords.length === 0) {
      this.setState(applyWhatIf(next, null));
      return;
    }
    this.setState({ ...next, whatIfPending: true });
    try {
      const response = await this.api.whatIf(next.query, next.maskedWords);
      this.setState(applyWhatIf(this.state, response));
    } catch (err) {
      const message =
        err instanceof ApiError && err.status === 422
          ? `words not in the article: ${err.unknownWords.join(", ")}`
          : `what-if request failed: ${String(err)}`;
      this.setState(setWarning(applyWhatIf(this.state, null), message));
    }
  }
}

export function createApp(
  doc: Document,
  api: Api,
  options: AppOptions = {},
): App {
  return new App(doc, api, options);
}
