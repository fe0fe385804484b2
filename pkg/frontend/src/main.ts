import { ApiError, fetchQueue, postDecision } from "./api.js";
import { handleKey } from "./keyboard.js";
import { render } from "./render.js";
import type { Action, AppState } from "./state.js";
import { focusedItem, initialState, reduce } from "./state.js";

const REVIEWER_KEY = "pmnharvest.reviewer";

function reviewerName(): string {
  const stored = window.localStorage.getItem(REVIEWER_KEY);
  if (stored) return stored;
  const entered = window.prompt("Reviewer name (recorded with every decision):") ?? "anonymous";
  const name = entered.trim() || "anonymous";
  window.localStorage.setItem(REVIEWER_KEY, name);
  return name;
}

const root = document.getElementById("app")!;
let state: AppState = initialState(reviewerName());

function dispatch(action: Action): void {
  state = reduce(state, action);
  draw();
}

async function submit(chosenScrUi: string | null): Promise<void> {
  const item = focusedItem(state);
  if (!item || item.status !== "Pending" || state.inFlight) return;
  dispatch({ kind: "submitStarted" });
  try {
    await postDecision({
      descriptor_ui: item.descriptor_ui,
      chosen_scr_ui: chosenScrUi,
      reviewer: state.reviewer,
    });
    dispatch({ kind: "submitSucceeded", descriptorUi: item.descriptor_ui, chosenScrUi });
  } catch (error) {
    const message =
      error instanceof ApiError
        ? error.message
        : "network error — the item is still pending";
    dispatch({ kind: "submitFailed", message });
  }
}

async function reload(): Promise<void> {
  try {
    dispatch({ kind: "loaded", items: await fetchQueue() });
  } catch (error) {
    dispatch({
      kind: "submitFailed",
      message: error instanceof ApiError ? error.message : "could not reach the server",
    });
  }
}

function draw(): void {
  render(root, state, {
    onFocus: (index) => dispatch({ kind: "focus", index }),
    onSelect: (scrUi) => void submit(scrUi),
    onRetry: () => void reload(),
  });
}

window.addEventListener("keydown", (event) => {
  if (event.target instanceof HTMLInputElement) return;
  const handled = handleKey(state, event.key, {
    focusNext: () => dispatch({ kind: "focusNext" }),
    focusPrev: () => dispatch({ kind: "focusPrev" }),
    select: (scrUi) => void submit(scrUi),
  });
  if (handled) event.preventDefault();
});

draw();
void reload();
