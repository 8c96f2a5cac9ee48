import type {
  DiffResult,
  LearnResult,
  SessionState,
  TeachResult,
  VisitResult,
  WindowReport,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;

  constructor(message: string, status: number) {
    super(message);
    this.status = status;
  }
}

async function request<T>(
  base: string,
  path: string,
  init?: RequestInit,
): Promise<T> {
  const response = await fetch(base + path, init);
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    // non-JSON body; fall through to the status check
  }
  if (!response.ok) {
    const detail =
      body && typeof body === "object" && "error" in body
        ? String((body as { error: unknown }).error)
        : `request failed with status ${response.status}`;
    throw new ApiError(detail, response.status);
  }
  return body as T;
}

function post<T>(base: string, path: string, payload?: unknown): Promise<T> {
  return request<T>(base, path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: payload === undefined ? undefined : JSON.stringify(payload),
  });
}

/** Typed client for the tracking service; one instance per page. */
export class ApiClient {
  constructor(private readonly base: string = "") {}

  getState(): Promise<SessionState> {
    return request<SessionState>(this.base, "/state");
  }

  getMissing(): Promise<{ missingList: string[] }> {
    return request<{ missingList: string[] }>(this.base, "/missing");
  }

  teach(context: string, label?: string): Promise<TeachResult> {
    const payload: { context: string; label?: string } = { context };
    if (label) payload.label = label;
    return post<TeachResult>(this.base, "/teach", payload);
  }

  learn(): Promise<LearnResult> {
    return post<LearnResult>(this.base, "/learn");
  }

  visit(context: string): Promise<VisitResult> {
    return post<VisitResult>(this.base, "/visit", { context });
  }

  report(): Promise<WindowReport> {
    return post<WindowReport>(this.base, "/report");
  }

  groceryDiff(items: string[]): Promise<DiffResult> {
    return post<DiffResult>(this.base, "/grocery-list", { items });
  }

  reset(): Promise<{ missingList: string[] }> {
    return post<{ missingList: string[] }>(this.base, "/reset");
  }
}
