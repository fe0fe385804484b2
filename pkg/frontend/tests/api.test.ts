import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, fetchItem, fetchQueue, postDecision } from "../src/api.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("fetchQueue", () => {
  it("returns the parsed item array", async () => {
    const items = [{ descriptor_ui: "D100003", status: "Pending" }];
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, items));
    vi.stubGlobal("fetch", fetchMock);

    await expect(fetchQueue()).resolves.toEqual(items);
    expect(fetchMock).toHaveBeenCalledWith("/api/queue", expect.anything());
  });
});

describe("fetchItem", () => {
  it("encodes the descriptor UI into the path", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, {}));
    vi.stubGlobal("fetch", fetchMock);

    await fetchItem("D100003");
    expect(fetchMock.mock.calls[0]![0]).toBe("/api/items/D100003");
  });

  it("raises ApiError with the server detail on 404", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse(404, { detail: "unknown descriptor 'D9'" })),
    );
    const error = await fetchItem("D9").catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBe(404);
    expect((error as ApiError).message).toBe("unknown descriptor 'D9'");
  });
});

describe("postDecision", () => {
  const body = { descriptor_ui: "D100003", chosen_scr_ui: "C063074", reviewer: "alice" };

  it("posts the decision body as JSON and resolves on 201", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(201, {}));
    vi.stubGlobal("fetch", fetchMock);

    await expect(postDecision(body)).resolves.toBeUndefined();
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("/api/decisions");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body)).toEqual(body);
  });

  it("supports the no-valid-candidate sentinel", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(201, {}));
    vi.stubGlobal("fetch", fetchMock);

    await postDecision({ ...body, chosen_scr_ui: null });
    expect(JSON.parse(fetchMock.mock.calls[0]![1].body).chosen_scr_ui).toBeNull();
  });

  it("surfaces the 422 diagnostic verbatim", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse(422, { detail: "SCR 'C9' was not offered" })),
    );
    const error = await postDecision(body).catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBe(422);
    expect((error as ApiError).message).toBe("SCR 'C9' was not offered");
  });

  it("falls back to raw text when the error body is not JSON", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(new Response("bad gateway", { status: 502 })),
    );
    const error = await postDecision(body).catch((e: unknown) => e);
    expect((error as ApiError).message).toBe("bad gateway");
  });
});
