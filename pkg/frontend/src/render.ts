import type { AppState } from "./state.js";
import { decidedCount, focusedItem } from "./state.js";
import type { Candidate, ReviewItem } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function sourceBadge(candidate: Candidate): string {
  switch (candidate.source) {
    case "PartialExact":
      return "exact parts";
    case "PartialSuperset":
      return "superset";
    case "EditDistance":
      return "edit distance";
  }
}

function candidateEvidence(candidate: Candidate): string {
  if (candidate.source === "EditDistance") return `distance ${candidate.distance}`;
  if (candidate.source === "PartialSuperset") return `+${candidate.extra_parts} extra parts`;
  return "all parts match";
}

export interface Handlers {
  onFocus(index: number): void;
  onSelect(scrUi: string | null): void;
  onRetry(): void;
}

function renderList(state: AppState, handlers: Handlers): HTMLElement {
  const list = el("ul", "queue");
  state.items.forEach((item, index) => {
    const row = el("li", item.status === "Decided" ? "decided" : "pending");
    if (index === state.focusIndex) row.classList.add("focused");
    row.append(
      el("span", "ui", item.descriptor_ui),
      el("span", "name", item.descriptor_name),
      el("span", "status", item.status === "Decided" ? `✓ ${item.chosen_scr_ui ?? "none"}` : "•"),
    );
    row.addEventListener("click", () => handlers.onFocus(index));
    list.append(row);
  });
  return list;
}

function renderCandidates(item: ReviewItem, handlers: Handlers): HTMLElement {
  const decided = item.status === "Decided";
  const table = el("ol", "candidates");
  item.candidates.forEach((candidate, index) => {
    const row = el("li");
    if (decided && item.chosen_scr_ui === candidate.scr_ui) row.classList.add("chosen");
    row.append(
      el("span", "term", candidate.matched_term),
      el("span", "scr", `(${candidate.scr_ui})`),
      el("span", `badge ${candidate.source}`, sourceBadge(candidate)),
      el("span", "evidence", candidateEvidence(candidate)),
    );
    const button = el("button", "select", `select [${index + 1}]`);
    button.disabled = decided;
    button.addEventListener("click", () => handlers.onSelect(candidate.scr_ui));
    row.append(button);
    table.append(row);
  });
  return table;
}

function renderDetail(state: AppState, handlers: Handlers): HTMLElement {
  const pane = el("section", "detail");
  const item = focusedItem(state);
  if (!item) {
    pane.append(el("p", "empty", "Queue is empty — nothing to adjudicate."));
    return pane;
  }
  pane.append(
    el("h2", undefined, `${item.descriptor_name} (${item.descriptor_ui})`),
    el("p", "pmn", item.pmn_text),
    el("p", "xtext", item.x_text ? `extracted X: ${item.x_text}` : "extracted X is empty"),
    renderCandidates(item, handlers),
  );
  const none = el("button", "none", "no valid candidate [n]");
  none.disabled = item.status === "Decided";
  none.addEventListener("click", () => handlers.onSelect(null));
  pane.append(none);
  if (state.error) {
    const bar = el("p", "error", state.error);
    const retry = el("button", "retry", "retry");
    retry.addEventListener("click", () => handlers.onRetry());
    bar.append(" ", retry);
    pane.append(bar);
  }
  return pane;
}

export function render(root: HTMLElement, state: AppState, handlers: Handlers): void {
  const scrollPositions = new Map<string, number>();
  root.querySelectorAll<HTMLElement>("[data-scroll]").forEach((node) => {
    scrollPositions.set(node.dataset.scroll!, node.scrollTop);
  });

  root.replaceChildren();
  const header = el("header");
  header.append(
    el("h1", undefined, "Adjudication queue"),
    el("span", "progress", `${decidedCount(state)} / ${state.items.length} decided`),
    el("span", "reviewer", `reviewer: ${state.reviewer}`),
  );
  const main = el("main");
  const listPane = el("nav", "list");
  listPane.dataset.scroll = "list";
  listPane.append(renderList(state, handlers));
  main.append(listPane, renderDetail(state, handlers));
  root.append(header, main, el("footer", "help",
    "keys: ↑/↓ or j/k move · 1-9 select candidate · n no valid candidate"));

  root.querySelectorAll<HTMLElement>("[data-scroll]").forEach((node) => {
    const saved = scrollPositions.get(node.dataset.scroll!);
    if (saved !== undefined) node.scrollTop = saved;
  });
}
