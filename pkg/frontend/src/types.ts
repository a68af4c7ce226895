/** Wire types mirroring the management service JSON, field for field. */

export interface Feature {
  name: string;
  value: string;
}

export interface InflectedFormJson {
  form: string;
  features: Feature[];
}

export type InflectionJson =
  | { paradigm: string }
  | { forms: InflectedFormJson[] }
  | null;

export interface Entry {
  id: number;
  lemma: string;
  pos: string;
  features: Feature[];
  inflection: InflectionJson;
}

export interface EntryPage {
  total: number;
  offset: number;
  limit: number;
  entries: Entry[];
}

export interface PreviewResponse {
  forms: InflectedFormJson[];
}

export interface ParadigmInfo {
  name: string;
  rule_count: number;
}

export function paradigmName(entry: Entry): string {
  if (entry.inflection && "paradigm" in entry.inflection) {
    return entry.inflection.paradigm;
  }
  return "";
}
