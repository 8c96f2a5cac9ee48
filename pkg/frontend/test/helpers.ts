import { vi } from "vitest";

import type { SessionState } from "../src/types.js";

export function makeState(over: Partial<SessionState> = {}): SessionState {
  return {
    day: 3,
    visitsToday: 0,
    windowStartDay: 3,
    windowEndDay: 4,
    windowEntries: 0,
    currentContext: "kitchen",
    latestDetections: ["apple", "orange"],
    teachBufferCount: 0,
    missingList: ["milk"],
    storageItems: ["cereal"],
    pendingStorageObserved: [],
    vocabulary: ["milk", "apple", "banana", "cereal", "orange"],
    contexts: {
      kitchen: { storage: false, items: { apple1: "apple" } },
      storage_space: { storage: true, items: { cereal2: "cereal" } },
    },
    clusters: [
      { label: "kitchen", isStorage: false },
      { label: "storage_space", isStorage: true },
    ],
    reportCount: 1,
    lastReport: {
      windowEndDay: 2,
      predicted: ["milk"],
      observed: ["apple", "orange"],
      storageItems: ["cereal"],
      missingList: ["milk"],
    },
    ...over,
  };
}

export type Handler = (init?: RequestInit) => unknown;

export interface FetchStub {
  fn: ReturnType<typeof vi.fn>;
  calls(routeKey: string): RequestInit[];
}

/** Install a fetch fake keyed by "METHOD /path"; unknown routes get 404. */
export function stubFetch(routes: Record<string, Handler>): FetchStub {
  const seen = new Map<string, RequestInit[]>();
  const fn = vi.fn(async (url: unknown, init?: RequestInit) => {
    const method = (init?.method ?? "GET").toUpperCase();
    const key = `${method} ${String(url)}`;
    const log = seen.get(key) ?? [];
    log.push(init ?? {});
    seen.set(key, log);
    const handler = routes[key];
    if (!handler) {
      return {
        ok: false,
        status: 404,
        json: async () => ({ error: `no route for ${key}` }),
      };
    }
    const body = handler(init);
    if (body instanceof Promise) {
      // a hanging handler simulates a slow request
      return body;
    }
    if (
      body &&
      typeof body === "object" &&
      "status" in (body as Record<string, unknown>) &&
      "payload" in (body as Record<string, unknown>)
    ) {
      const { status, payload } = body as { status: number; payload: unknown };
      return {
        ok: status >= 200 && status < 300,
        status,
        json: async () => payload,
      };
    }
    return { ok: true, status: 200, json: async () => body };
  });
  globalThis.fetch = fn as unknown as typeof fetch;
  return { fn, calls: (key) => seen.get(key) ?? [] };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
