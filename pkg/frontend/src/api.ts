/** Thin typed client over the management service HTTP API. */

import type { Entry, EntryPage, ParadigmInfo, PreviewResponse } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

/** 422 payload: per-field validation messages from the server. */
export class ValidationError extends ApiError {
  constructor(public errors: Record<string, string>) {
    super(422, Object.values(errors).join("; "));
  }
}

export class NotFoundError extends ApiError {
  constructor(message: string) {
    super(404, message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function asError(response: Response): Promise<ApiError> {
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    // non-JSON error body; fall through to a generic error
  }
  if (response.status === 422 && body && typeof body === "object" && "errors" in body) {
    return new ValidationError((body as { errors: Record<string, string> }).errors);
  }
  if (response.status === 404) {
    return new NotFoundError(`not found (${response.status})`);
  }
  return new ApiError(response.status, `request failed (${response.status})`);
}

export class LexiconApi {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      throw await asError(response);
    }
    if (response.status === 204) {
      return undefined as T;
    }
    return (await response.json()) as T;
  }

  listEntries(offset: number, limit: number, query: string): Promise<EntryPage> {
    const params = new URLSearchParams({ offset: String(offset), limit: String(limit) });
    if (query) {
      params.set("q", query);
    }
    return this.request<EntryPage>(`/api/entries?${params.toString()}`);
  }

  createEntry(entry: Omit<Entry, "id">): Promise<Entry> {
    return this.request<Entry>("/api/entries", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(entry),
    });
  }

  updateEntry(entry: Entry): Promise<Entry> {
    return this.request<Entry>(`/api/entries/${entry.id}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(entry),
    });
  }

  deleteEntry(id: number): Promise<void> {
    return this.request<void>(`/api/entries/${id}`, { method: "DELETE" });
  }

  previewInflection(entry: Entry): Promise<PreviewResponse> {
    return this.request<PreviewResponse>("/api/preview-inflection", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(entry),
    });
  }

  paradigms(): Promise<ParadigmInfo[]> {
    return this.request<ParadigmInfo[]>("/api/paradigms");
  }

  save(): Promise<{ bytes: number }> {
    return this.request<{ bytes: number }>("/api/save", { method: "POST" });
  }
}
