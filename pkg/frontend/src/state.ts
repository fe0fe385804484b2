import type { ReviewItem } from "./types.js";

/**
 * Pure client state: the queue, keyboard focus, one in-flight request flag
 * (duplicate-submit guard), and the last error shown inline.
 */
export interface AppState {
  items: ReviewItem[];
  focusIndex: number;
  inFlight: boolean;
  error: string | null;
  reviewer: string;
}

export type Action =
  | { kind: "loaded"; items: ReviewItem[] }
  | { kind: "focus"; index: number }
  | { kind: "focusNext" }
  | { kind: "focusPrev" }
  | { kind: "submitStarted" }
  | { kind: "submitSucceeded"; descriptorUi: string; chosenScrUi: string | null }
  | { kind: "submitFailed"; message: string }
  | { kind: "setReviewer"; reviewer: string };

export function initialState(reviewer: string): AppState {
  return { items: [], focusIndex: 0, inFlight: false, error: null, reviewer };
}

function clamp(index: number, length: number): number {
  if (length === 0) return 0;
  return Math.min(Math.max(index, 0), length - 1);
}

/** Index of the first Pending item at or after `from`, else before it, else -1. */
export function nextPendingIndex(items: ReviewItem[], from: number): number {
  for (let i = from; i < items.length; i++) {
    if (items[i]!.status === "Pending") return i;
  }
  for (let i = Math.min(from, items.length) - 1; i >= 0; i--) {
    if (items[i]!.status === "Pending") return i;
  }
  return -1;
}

export function focusedItem(state: AppState): ReviewItem | null {
  return state.items[state.focusIndex] ?? null;
}

/**
 * The SCR a number key selects, or undefined if that digit names no offered
 * candidate — the client never fabricates a selectable SCR.
 */
export function candidateForDigit(state: AppState, digit: number): string | undefined {
  const item = focusedItem(state);
  if (!item || item.status !== "Pending") return undefined;
  return item.candidates[digit - 1]?.scr_ui;
}

export function decidedCount(state: AppState): number {
  return state.items.filter((i) => i.status === "Decided").length;
}

export function reduce(state: AppState, action: Action): AppState {
  switch (action.kind) {
    case "loaded": {
      const pending = nextPendingIndex(action.items, 0);
      return {
        ...state,
        items: action.items,
        focusIndex: pending === -1 ? 0 : pending,
        error: null,
      };
    }
    case "focus":
      return { ...state, focusIndex: clamp(action.index, state.items.length) };
    case "focusNext":
      return { ...state, focusIndex: clamp(state.focusIndex + 1, state.items.length) };
    case "focusPrev":
      return { ...state, focusIndex: clamp(state.focusIndex - 1, state.items.length) };
    case "submitStarted":
      return { ...state, inFlight: true, error: null };
    case "submitSucceeded": {
      const items = state.items.map((item) =>
        item.descriptor_ui === action.descriptorUi
          ? { ...item, status: "Decided" as const, chosen_scr_ui: action.chosenScrUi }
          : item,
      );
      const next = nextPendingIndex(items, state.focusIndex);
      return {
        ...state,
        items,
        inFlight: false,
        focusIndex: next === -1 ? state.focusIndex : next,
      };
    }
    case "submitFailed":
      return { ...state, inFlight: false, error: action.message };
    case "setReviewer":
      return { ...state, reviewer: action.reviewer };
  }
}
