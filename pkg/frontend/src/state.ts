/** Page state and its transitions.
 *
 * All entry data comes verbatim from the last server response; the
 * client never fabricates entry state.  Transitions return new state
 * objects, so rendering is a pure function of the state.
 */

import type { Entry, EntryPage } from "./types.js";

export interface Banner {
  kind: "info" | "error";
  text: string;
}

export interface PageState {
  offset: number;
  limit: number;
  query: string;
  total: number;
  entries: Entry[];
  /** ids edited since the last successful save */
  dirtyIds: Set<number>;
  /** per-page union of feature names, in first-seen order */
  featureColumns: string[];
  banner: Banner | null;
  /** "id:field" -> server validation message */
  cellErrors: Record<string, string>;
  /** row id -> rendered inflection preview text */
  previews: Record<number, string>;
}

export const DEFAULT_LIMIT = 50;

export function emptyState(limit: number = DEFAULT_LIMIT): PageState {
  return {
    offset: 0,
    limit,
    query: "",
    total: 0,
    entries: [],
    dirtyIds: new Set(),
    featureColumns: [],
    banner: null,
    cellErrors: {},
    previews: {},
  };
}

export function featureColumns(entries: Entry[]): string[] {
  const seen: string[] = [];
  for (const entry of entries) {
    for (const feature of entry.features) {
      if (!seen.includes(feature.name)) {
        seen.push(feature.name);
      }
    }
  }
  return seen;
}

/** Replace the rows with a fresh page from the server. */
export function applyPage(state: PageState, page: EntryPage, query: string): PageState {
  const ids = new Set(page.entries.map((e) => e.id));
  return {
    ...state,
    offset: page.offset,
    limit: page.limit,
    query,
    total: page.total,
    entries: page.entries,
    featureColumns: featureColumns(page.entries),
    dirtyIds: new Set([...state.dirtyIds].filter((id) => ids.has(id))),
    banner: null,
    cellErrors: {},
    previews: {},
  };
}

/** A fetch failed: keep the prior page, show a non-blocking banner. */
export function applyFetchFailure(state: PageState, message: string): PageState {
  return { ...state, banner: { kind: "error", text: message } };
}

/** Replace one row with the entry echoed by the server after a write. */
export function applyServerEntry(state: PageState, entry: Entry): PageState {
  const entries = state.entries.map((e) => (e.id === entry.id ? entry : e));
  const cellErrors = Object.fromEntries(
    Object.entries(state.cellErrors).filter(([key]) => !key.startsWith(`${entry.id}:`)),
  );
  const previews = { ...state.previews };
  delete previews[entry.id];
  return {
    ...state,
    entries,
    featureColumns: featureColumns(entries),
    dirtyIds: new Set([...state.dirtyIds, entry.id]),
    cellErrors,
    banner: null,
  };
}

/** Server rejected an edit: keep state, surface the per-field messages. */
export function applyValidationErrors(
  state: PageState,
  id: number,
  errors: Record<string, string>,
): PageState {
  const cellErrors = { ...state.cellErrors };
  for (const [field, message] of Object.entries(errors)) {
    cellErrors[`${id}:${field}`] = message;
  }
  return { ...state, cellErrors };
}

/** Entry vanished on the server (concurrent delete): drop the row. */
export function removeRow(state: PageState, id: number, notice: string): PageState {
  const entries = state.entries.filter((e) => e.id !== id);
  return {
    ...state,
    entries,
    total: Math.max(0, state.total - 1),
    featureColumns: featureColumns(entries),
    dirtyIds: new Set([...state.dirtyIds].filter((d) => d !== id)),
    banner: { kind: "error", text: notice },
  };
}

export function setPreview(state: PageState, id: number, text: string): PageState {
  return { ...state, previews: { ...state.previews, [id]: text } };
}

export function applySaved(state: PageState, bytes: number): PageState {
  return {
    ...state,
    dirtyIds: new Set(),
    banner: { kind: "info", text: `saved ${bytes} bytes` },
  };
}

export function applySaveFailure(state: PageState, message: string): PageState {
  return { ...state, banner: { kind: "error", text: message } };
}

export function pageInfo(state: PageState): { page: number; pages: number } {
  const pages = Math.max(1, Math.ceil(state.total / state.limit));
  const page = Math.floor(state.offset / state.limit) + 1;
  return { page, pages };
}

/** Build the entry to send for an edited cell; the server re-validates. */
export function editedEntry(entry: Entry, field: string, value: string): Entry {
  if (field === "lemma") {
    return { ...entry, lemma: value };
  }
  if (field === "pos") {
    return { ...entry, pos: value };
  }
  if (field === "paradigm") {
    return { ...entry, inflection: value ? { paradigm: value } : null };
  }
  if (field.startsWith("feature:")) {
    const name = field.slice("feature:".length);
    const present = entry.features.some((f) => f.name === name);
    let features;
    if (!present && value !== "") {
      features = [...entry.features, { name, value }];
    } else if (value === "") {
      features = entry.features.filter((f) => f.name !== name);
    } else {
      features = entry.features.map((f) => (f.name === name ? { name, value } : f));
    }
    return { ...entry, features };
  }
  throw new Error(`unknown editable field ${field}`);
}
