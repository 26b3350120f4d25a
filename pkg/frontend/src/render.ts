/** DOM rendering of the client state; no numbers are computed here. */

import {
  formatDegreeFixed,
  formatDegreeSci,
  formatFraction,
  formatProbability,
  formatProgress,
} from "./format.js";
import type { UiState } from "./state.js";
import { wordsOf } from "./state.js";
import { LABEL_NAMES } from "./types.js";

export interface RenderHandlers {
  onToggleMask: (word: string) => void;
}

function byId<T extends HTMLElement>(doc: Document, id: string): T {
  const el = doc.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function clear(el: HTMLElement): void {
  while (el.firstChild) el.removeChild(el.firstChild);
}

function renderBanner(doc: Document, state: UiState): void {
  const banner = byId(doc, "status-banner");
  banner.textContent = state.error ?? state.warning ?? "";
  banner.className = state.error
    ? "banner banner-error"
    : state.warning
      ? "banner banner-warning"
      : "banner banner-hidden";
}

function renderMonitor(doc: Document, state: UiState): void {
  const monitor = byId(doc, "monitor");
  monitor.classList.toggle("hidden", state.phase === "idle");
  byId(doc, "stage-label").textContent =
    state.phase === "predicting" ? "scoring" : state.stage || "-";
  const fill = byId(doc, "progress-fill");
  fill.style.width = formatProgress(state.progress);
  byId(doc, "progress-label").textContent = formatProgress(state.progress);
}

function renderPrediction(doc: Document, state: UiState): void {
  const panel = byId(doc, "result");
  if (!state.prediction) {
    panel.classList.add("hidden");
    return;
  }
  panel.classList.remove("hidden");
  const { p_real, p_fake, n_nodes, n_edges } = state.prediction;
  const verdict = p_fake > p_real ? "fake" : "real";
  byId(doc, "verdict-label").textContent = verdict;
  byId(doc, "verdict-label").className = `verdict verdict-${verdict}`;
  byId(doc, "prob-real").textContent = formatProbability(p_real);
  byId(doc, "prob-fake").textContent = formatProbability(p_fake);
  byId(doc, "prob-real").title = formatFraction(p_real);
  byId(doc, "prob-fake").title = formatFraction(p_fake);
  byId(doc, "prob-real-fill").style.width = `${p_real * 100}%`;
  byId(doc, "prob-fake-fill").style.width = `${p_fake * 100}%`;
  byId(doc, "graph-stats").textContent =
    `${n_nodes} distinct words, ${n_edges} co-occurrence edges`;
}

function renderTable(
  doc: Document,
  state: UiState,
  handlers: RenderHandlers,
): void {
  const container = byId(doc, "ranking");
  if (!state.entries || state.referenceClass === null) {
    container.classList.add("hidden");
    return;
  }
  container.classList.remove("hidden");
  const refName = LABEL_NAMES[state.referenceClass];
  byId(doc, "ranking-caption").textContent =
    `misleading degree toward the "${refName}" verdict; ` +
    "click a word to mask it";
  const body = byId(doc, "ranking-body");
  clear(body);
  state.entries.forEach((entry, index) => {
    const row = doc.createElement("tr");
    const masked = state.maskedWords.includes(entry.word);
    row.className = masked ? "row-masked" : "";

    const rank = doc.createElement("td");
    rank.textContent = String(index + 1);
    row.appendChild(rank);

    const word = doc.createElement("td");
    const btn = doc.createElement("button");
    btn.type = "button";
    btn.className = "word-toggle";
    btn.textContent = entry.word;
    btn.disabled = state.whatIfPending;
    btn.addEventListener("click", () => handlers.onToggleMask(entry.word));
    word.appendChild(btn);
    row.appendChild(word);

    const sci = doc.createElement("td");
    sci.className = "num";
    sci.textContent = formatDegreeSci(entry.misleading_degree);
    row.appendChild(sci);

    const fixed = doc.createElement("td");
    fixed.className = "num";
    fixed.textContent = formatDegreeFixed(entry.misleading_degree);
    row.appendChild(fixed);

    const maskedProb = doc.createElement("td");
    maskedProb.className = "num";
    maskedProb.textContent = formatProbability(
      state.referenceClass === 0
        ? entry.masked_prediction.p_real
        : entry.masked_prediction.p_fake,
    );
    row.appendChild(maskedProb);

    body.appendChild(row);
  });
}

function renderHighlight(doc: Document, state: UiState): void {
  const panel = byId(doc, "query-highlight");
  if (!state.prediction || state.maskedWords.length === 0) {
    panel.classList.add("hidden");
    clear(panel);
    return;
  }
  panel.classList.remove("hidden");
  clear(panel);
  const text = state.query;
  const lower = text.toLowerCase().replace(/’/g, "'");
  const re = /[\p{L}\p{N}]+(?:'[\p{L}\p{N}]+)*/gu;
  let cursor = 0;
  for (const match of lower.matchAll(re)) {
    const start = match.index ?? 0;
    const end = start + match[0].length;
    if (start > cursor) {
      panel.appendChild(doc.createTextNode(text.slice(cursor, start)));
    }
    const original = text.slice(start, end);
    if (state.maskedWords.includes(match[0])) {
      const mark = doc.createElement("mark");
      mark.textContent = original;
      panel.appendChild(mark);
    } else {
      panel.appendChild(doc.createTextNode(original));
    }
    cursor = end;
  }
  if (cursor < text.length) {
    panel.appendChild(doc.createTextNode(text.slice(cursor)));
  }
}

function renderWhatIf(doc: Document, state: UiState): void {
  const panel = byId(doc, "whatif");
  const showable =
    state.prediction !== null &&
    (state.maskedWords.length > 0 || state.whatIf !== null);
  panel.classList.toggle("hidden", !showable);
  if (!showable) return;
  byId(doc, "whatif-words").textContent = state.maskedWords.length
    ? state.maskedWords.join(", ")
    : "(none)";
  if (state.whatIfPending) {
    byId(doc, "whatif-status").textContent = "recomputing...";
    return;
  }
  byId(doc, "whatif-status").textContent = "";
  const base = state.prediction as NonNullable<typeof state.prediction>;
  const masked = state.whatIf?.masked ?? null;
  byId(doc, "whatif-base").textContent =
    `real ${formatProbability(base.p_real)} / fake ${formatProbability(base.p_fake)}`;
  byId(doc, "whatif-masked").textContent = masked
    ? `real ${formatProbability(masked.p_real)} / fake ${formatProbability(masked.p_fake)}`
    : "-";
  byId(doc, "whatif-delta").textContent = state.whatIf
    ? `${formatDegreeSci(state.whatIf.delta_reference_class)} ` +
      `(${formatDegreeFixed(state.whatIf.delta_reference_class)})`
    : "-";
}

export function render(
  doc: Document,
  state: UiState,
  handlers: RenderHandlers,
): void {
  const submit = byId<HTMLButtonElement>(doc, "submit-btn");
  submit.disabled =
    state.phase === "predicting" || state.phase === "explaining";
  renderBanner(doc, state);
  renderMonitor(doc, state);
  renderPrediction(doc, state);
  renderTable(doc, state, handlers);
  renderHighlight(doc, state);
  renderWhatIf(doc, state);
}

export { wordsOf };
