import type { AppState } from "./state.js";
import { candidateForDigit, focusedItem } from "./state.js";

export interface KeyActions {
  focusNext(): void;
  focusPrev(): void;
  select(scrUi: string | null): void;
}

/** Map one keydown to an action; returns true when the key was handled. */
export function handleKey(state: AppState, key: string, actions: KeyActions): boolean {
  if (key === "ArrowDown" || key === "j") {
    actions.focusNext();
    return true;
  }
  if (key === "ArrowUp" || key === "k") {
    actions.focusPrev();
    return true;
  }
  if (state.inFlight) return false; // duplicate-submit guard
  const item = focusedItem(state);
  if (!item || item.status !== "Pending") return false;
  if (key === "n" || key === "0") {
    actions.select(null);
    return true;
  }
  if (/^[1-9]$/.test(key)) {
    const scrUi = candidateForDigit(state, Number(key));
    if (scrUi !== undefined) {
      actions.select(scrUi);
      return true;
    }
  }
  return false;
}
