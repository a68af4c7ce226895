/** HTML rendering: a pure function of the page state. */

import { pageInfo, type PageState } from "./state.js";
import { paradigmName, type Entry } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll("\"", "&quot;")
    .replaceAll("'", "&#39;");
}

function cell(state: PageState, entry: Entry, field: string, value: string): string {
  const error = state.cellErrors[`${entry.id}:${field}`];
  const errorHtml = error
    ? `<span class="cell-error">${escapeHtml(error)}</span>`
    : "";
  return (
    `<td class="cell${error ? " invalid" : ""}" data-id="${entry.id}" data-field="${escapeHtml(field)}">` +
    `<span class="value" contenteditable="true" spellcheck="false">${escapeHtml(value)}</span>` +
    errorHtml +
    `</td>`
  );
}

function featureValue(entry: Entry, name: string): string {
  const feature = entry.features.find((f) => f.name === name);
  return feature ? feature.value : "";
}

function row(state: PageState, entry: Entry): string {
  const dirty = state.dirtyIds.has(entry.id) ? " dirty" : "";
  const cells = [
    `<td class="id-cell">${entry.id}${dirty ? "<span class='dirty-mark'>*</span>" : ""}</td>`,
    cell(state, entry, "lemma", entry.lemma),
    cell(state, entry, "pos", entry.pos),
    ...state.featureColumns.map((name) => cell(state, entry, `feature:${name}`, featureValue(entry, name))),
    cell(state, entry, "paradigm", paradigmName(entry)),
    `<td class="actions"><button class="preview" data-id="${entry.id}">forms</button></td>`,
  ];
  let html = `<tr class="entry-row${dirty}" data-id="${entry.id}">${cells.join("")}</tr>`;
  const preview = state.previews[entry.id];
  if (preview !== undefined) {
    const span = state.featureColumns.length + 4;
    html += `<tr class="preview-row" data-id="${entry.id}"><td colspan="${span}">${escapeHtml(preview)}</td></tr>`;
  }
  return html;
}

export function renderTable(state: PageState): string {
  if (state.entries.length === 0) {
    return `<p class="empty">0 entries</p>`;
  }
  const headers = [
    "id",
    "lemma",
    "pos",
    ...state.featureColumns,
    "paradigm",
    "",
  ]
    .map((h) => `<th>${escapeHtml(h)}</th>`)
    .join("");
  const body = state.entries.map((entry) => row(state, entry)).join("");
  return `<table class="entries"><thead><tr>${headers}</tr></thead><tbody>${body}</tbody></table>`;
}

export function renderBanner(state: PageState): string {
  if (!state.banner) {
    return "";
  }
  return `<div class="banner ${state.banner.kind}">${escapeHtml(state.banner.text)}</div>`;
}

export function renderPager(state: PageState): string {
  const { page, pages } = pageInfo(state);
  return (
    `<div class="pager">` +
    `<button class="page-prev"${page <= 1 ? " disabled" : ""}>&#8592;</button>` +
    `<span class="page-info">${page}/${pages}</span>` +
    `<button class="page-next"${page >= pages ? " disabled" : ""}>&#8594;</button>` +
    `<span class="total">${state.total} entries</span>` +
    `</div>`
  );
}

export function renderToolbar(state: PageState): string {
  const dirty = state.dirtyIds.size;
  return (
    `<div class="toolbar">` +
    `<input class="search" type="text" placeholder="filter lemmas" value="${escapeHtml(state.query)}"/>` +
    `<button class="add-entry">add entry</button>` +
    `<button class="save-all">save${dirty ? ` (${dirty} edited)` : ""}</button>` +
    `</div>`
  );
}

export function renderApp(state: PageState): string {
  return renderToolbar(state) + renderBanner(state) + renderTable(state) + renderPager(state);
}

/** Preview text: "form (name=value, ...)" per generated form. */
export function formatPreview(forms: { form: string; features: { name: string; value: string }[] }[]): string {
  if (forms.length === 0) {
    return "no forms";
  }
  return forms
    .map((f) => {
      const features = f.features.map((a) => `${a.name}=${a.value}`).join(", ");
      return features ? `${f.form} (${features})` : f.form;
    })
    .join(", ");
}
