import type { DecisionBody, HostAgreement, ReviewItem } from "./types.js";

/** Error carrying the server's diagnostic verbatim, for inline display. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function errorDetail(response: Response): Promise<string> {
  const text = await response.text();
  try {
    const body = JSON.parse(text);
    if (typeof body.detail === "string") return body.detail;
  } catch {
    /* not JSON; fall through to raw text */
  }
  return text || `HTTP ${response.status}`;
}

async function getJson<T>(path: string): Promise<T> {
  const response = await fetch(path, { headers: { Accept: "application/json" } });
  if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
  return (await response.json()) as T;
}

export function fetchQueue(): Promise<ReviewItem[]> {
  return getJson<ReviewItem[]>("/api/queue");
}

export function fetchItem(descriptorUi: string): Promise<ReviewItem> {
  return getJson<ReviewItem>(`/api/items/${encodeURIComponent(descriptorUi)}`);
}

export function fetchAgreement(): Promise<HostAgreement[]> {
  return getJson<HostAgreement[]>("/api/agreement");
}

export async function postDecision(body: DecisionBody): Promise<void> {
  const response = await fetch("/api/decisions", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (response.status !== 201) {
    throw new ApiError(response.status, await errorDetail(response));
  }
}
