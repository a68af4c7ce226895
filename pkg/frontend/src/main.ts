/** DOM wiring: delegates events to the pure state/render modules.
 *
 * Optimistic updates are deliberately absent: every mutation waits for
 * the server response and re-renders from it.
 */

import { LexiconApi, NotFoundError, ValidationError } from "./api.js";
import { formatPreview, renderApp } from "./render.js";
import {
  applyFetchFailure,
  applyPage,
  applySaved,
  applySaveFailure,
  applyServerEntry,
  applyValidationErrors,
  editedEntry,
  emptyState,
  removeRow,
  setPreview,
  type PageState,
} from "./state.js";
import type { Entry } from "./types.js";

const api = new LexiconApi("");
let state: PageState = emptyState();
const app = document.getElementById("app") as HTMLElement;

function render(focusCell?: { id: number; field: string }): void {
  app.innerHTML = renderApp(state);
  if (focusCell) {
    const selector = `td[data-id="${focusCell.id}"][data-field="${focusCell.field}"] .value`;
    const span = app.querySelector<HTMLElement>(selector);
    span?.focus();
  }
}

function entryById(id: number): Entry | undefined {
  return state.entries.find((e) => e.id === id);
}

async function loadPage(offset: number, query: string = state.query): Promise<void> {
  try {
    const page = await api.listEntries(offset, state.limit, query);
    state = applyPage(state, page, query);
  } catch (error) {
    state = applyFetchFailure(state, `could not load entries: ${String(error)}`);
  }
  render();
}

async function commitEdit(id: number, field: string, value: string): Promise<void> {
  const current = entryById(id);
  if (!current) {
    return;
  }
  try {
    const stored = await api.updateEntry(editedEntry(current, field, value));
    state = applyServerEntry(state, stored);
    render();
  } catch (error) {
    if (error instanceof ValidationError) {
      state = applyValidationErrors(state, id, error.errors);
      render({ id, field });
    } else if (error instanceof NotFoundError) {
      state = removeRow(state, id, `entry ${id} no longer exists on the server`);
      render();
    } else {
      state = applyFetchFailure(state, `edit failed: ${String(error)}`);
      render();
    }
  }
}

async function previewRow(id: number): Promise<void> {
  const entry = entryById(id);
  if (!entry) {
    return;
  }
  try {
    const response = await api.previewInflection(entry);
    state = setPreview(state, id, formatPreview(response.forms));
  } catch (error) {
    if (error instanceof ValidationError) {
      state = setPreview(state, id, `cannot inflect: ${error.message}`);
    } else {
      state = setPreview(state, id, `preview failed: ${String(error)}`);
    }
  }
  render();
}

async function saveAll(): Promise<void> {
  try {
    const result = await api.save();
    state = applySaved(state, result.bytes);
  } catch (error) {
    state = applySaveFailure(state, `save failed: ${String(error)}`);
  }
  render();
}

async function addEntry(): Promise<void> {
  try {
    const stored = await api.createEntry({
      lemma: `new-entry-${Date.now()}`,
      pos: "noun",
      features: [],
      inflection: null,
    });
    await loadPage(state.offset);
    state = { ...state, dirtyIds: new Set([...state.dirtyIds, stored.id]) };
    render();
  } catch (error) {
    state = applyFetchFailure(state, `create failed: ${String(error)}`);
    render();
  }
}

app.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  if (target.matches("button.preview")) {
    void previewRow(Number(target.dataset.id));
  } else if (target.matches("button.save-all")) {
    void saveAll();
  } else if (target.matches("button.add-entry")) {
    void addEntry();
  } else if (target.matches("button.page-prev")) {
    void loadPage(Math.max(0, state.offset - state.limit));
  } else if (target.matches("button.page-next")) {
    void loadPage(state.offset + state.limit);
  }
});

app.addEventListener(
  "blur",
  (event) => {
    const target = event.target as HTMLElement;
    if (target.matches(".cell .value")) {
      const td = target.closest("td") as HTMLElement;
      void commitEdit(Number(td.dataset.id), td.dataset.field as string, target.innerText.trim());
    }
  },
  true,
);

app.addEventListener("keydown", (event) => {
  const target = event.target as HTMLElement;
  if (event.key === "Enter") {
    if (target.matches(".cell .value")) {
      event.preventDefault();
      target.blur();
    } else if (target.matches("input.search")) {
      void loadPage(0, (target as HTMLInputElement).value);
    }
  }
});

void loadPage(0);
