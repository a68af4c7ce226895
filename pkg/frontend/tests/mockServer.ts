/** Stateful in-memory stand-in for the management service.
 *
 * Implements the same routes, status codes and JSON shapes, so client
 * tests can drive full edit/save/reload flows without a backend.
 */

import type { Entry, InflectedFormJson } from "../src/types.js";

export interface MockService {
  fetch: (input: string, init?: RequestInit) => Promise<Response>;
  entries: Map<number, Entry>;
  savedSnapshots: Entry[][];
  failNextSave: boolean;
  failNextFetch: boolean;
  requests: string[];
}

const PARADIGMS: Record<string, { strip: number; append: string; features: { name: string; value: string }[] }[]> = {
  N1: [
    { strip: 0, append: "", features: [{ name: "number", value: "singular" }] },
    { strip: 0, append: "s", features: [{ name: "number", value: "plural" }] },
  ],
  "N-y": [
    { strip: 0, append: "", features: [{ name: "number", value: "singular" }] },
    { strip: 1, append: "ies", features: [{ name: "number", value: "plural" }] },
  ],
};

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function validate(entry: Partial<Entry>): Record<string, string> {
  const errors: Record<string, string> = {};
  if (typeof entry.lemma !== "string" || entry.lemma.length === 0) {
    errors.lemma = "lemma must be a non-empty string";
  } else if (entry.lemma.trim() !== entry.lemma || entry.lemma.includes("  ")) {
    errors.lemma = `lemma ${JSON.stringify(entry.lemma)} must use single internal spaces only`;
  }
  if (typeof entry.pos !== "string" || entry.pos.length === 0) {
    errors.pos = "pos must be a non-empty string";
  }
  const inflection = entry.inflection;
  if (inflection && "paradigm" in inflection && !(inflection.paradigm in PARADIGMS)) {
    errors.inflection = `unknown paradigm '${inflection.paradigm}'`;
  }
  return errors;
}

function inflect(entry: Entry): InflectedFormJson[] | null {
  const inflection = entry.inflection;
  if (!inflection) {
    return [];
  }
  if ("forms" in inflection) {
    return inflection.forms;
  }
  const rules = PARADIGMS[inflection.paradigm];
  if (!rules) {
    return null;
  }
  return rules.map((rule) => ({
    form: entry.lemma.slice(0, entry.lemma.length - rule.strip) + rule.append,
    features: rule.features,
  }));
}

export function createMockService(initial: Omit<Entry, "id">[]): MockService {
  const entries = new Map<number, Entry>();
  let nextId = 0;
  for (const data of initial) {
    entries.set(nextId, { ...data, id: nextId });
    nextId += 1;
  }

  const service: MockService = {
    entries,
    savedSnapshots: [],
    failNextSave: false,
    failNextFetch: false,
    requests: [],
    fetch: async (input, init) => {
      const method = init?.method ?? "GET";
      const url = new URL(input, "http://mock");
      const path = url.pathname;
      service.requests.push(`${method} ${path}`);
      const body = init?.body ? (JSON.parse(init.body as string) as Partial<Entry>) : undefined;

      if (method === "GET" && path === "/api/entries") {
        if (service.failNextFetch) {
          service.failNextFetch = false;
          return json(500, { detail: "boom" });
        }
        const offset = Number(url.searchParams.get("offset") ?? "0");
        const limit = Number(url.searchParams.get("limit") ?? "50");
        const query = url.searchParams.get("q") ?? "";
        const all = [...entries.values()].filter((e) => e.lemma.includes(query));
        return json(200, {
          total: all.length,
          offset,
          limit,
          entries: all.slice(offset, offset + limit),
        });
      }

      if (method === "POST" && path === "/api/entries") {
        const errors = validate(body ?? {});
        if (Object.keys(errors).length > 0) {
          return json(422, { errors });
        }
        const stored = { ...(body as Omit<Entry, "id">), id: nextId } as Entry;
        entries.set(nextId, stored);
        nextId += 1;
        return json(201, stored);
      }

      const entryMatch = path.match(/^\/api\/entries\/(\d+)$/);
      if (entryMatch) {
        const id = Number(entryMatch[1]);
        if (method === "GET") {
          const entry = entries.get(id);
          return entry ? json(200, entry) : json(404, { detail: "no entry" });
        }
        if (method === "PUT") {
          if (!entries.has(id)) {
            return json(404, { detail: "no entry" });
          }
          const errors = validate(body ?? {});
          if (Object.keys(errors).length > 0) {
            return json(422, { errors });
          }
          const stored = { ...(body as Entry), id };
          entries.set(id, stored);
          return json(200, stored);
        }
        if (method === "DELETE") {
          return entries.delete(id) ? new Response(null, { status: 204 }) : json(404, {});
        }
      }

      if (method === "POST" && path === "/api/preview-inflection") {
        const errors = validate(body ?? {});
        if (Object.keys(errors).length > 0) {
          return json(422, { errors });
        }
        const forms = inflect(body as Entry);
        if (forms === null) {
          return json(422, { errors: { inflection: "unknown paradigm" } });
        }
        return json(200, { forms });
      }

      if (method === "GET" && path === "/api/paradigms") {
        return json(
          200,
          Object.entries(PARADIGMS).map(([name, rules]) => ({ name, rule_count: rules.length })),
        );
      }

      if (method === "POST" && path === "/api/save") {
        if (service.failNextSave) {
          service.failNextSave = false;
          return json(500, { detail: "save failed: injected" });
        }
        const snapshot = [...entries.values()].map((e) => ({ ...e }));
        service.savedSnapshots.push(snapshot);
        return json(200, { bytes: JSON.stringify(snapshot).length });
      }

      return json(404, { detail: `no route ${method} ${path}` });
    },
  };
  return service;
}

export function gameEntry(): Omit<Entry, "id"> {
  return {
    lemma: "game",
    pos: "noun",
    features: [{ name: "reliability", value: "1" }],
    inflection: { paradigm: "N1" },
  };
}
