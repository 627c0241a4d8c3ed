/**
 * The engine's graph_json document (format_version 1). See FORMATS.md in the
 * engine repository for the byte-level contract.
 */

export type ExternalId = string | number;
export type PropValue = number | string | boolean;
export type PropMap = Record<string, PropValue>;

export interface NodeDoc {
  id: ExternalId;
  updates: Array<[number, PropMap]>;
  constant?: PropMap;
}

export interface LayerHistoryDoc {
  additions: Array<[number, PropMap]>;
  deletions: number[];
}

export interface EdgeDoc {
  source: ExternalId;
  target: ExternalId;
  layers: Record<string, LayerHistoryDoc>;
}

export interface GraphDocument {
  format_version: 1;
  layers: string[];
  graph: { constant: PropMap; temporal: Record<string, Array<[number, PropValue]>> };
  nodes: NodeDoc[];
  edges: EdgeDoc[];
}

/** Total order over mixed string/number ids, matching the engine's exports. */
export function idSortKey(a: ExternalId, b: ExternalId): number {
  const rank = (x: ExternalId) => (typeof x === "number" ? 0 : 1);
  if (rank(a) !== rank(b)) return rank(a) - rank(b);
  if (typeof a === "number" && typeof b === "number") return a - b;
  return String(a) < String(b) ? -1 : String(a) > String(b) ? 1 : 0;
}

/**
 * Compact JSON with recursively sorted object keys: the engine's canonical
 * dump format. Caveat inherited from JSON: integral floats (2.0) serialise
 * as integers.
 */
export function canonicalJson(value: unknown): string {
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  if (value !== null && typeof value === "object") {
    const record = value as Record<string, unknown>;
    const body = Object.keys(record)
      .sort()
      .map((k) => `${JSON.stringify(k)}:${canonicalJson(record[k])}`);
    return "{" + body.join(",") + "}";
  }
  return JSON.stringify(value);
}
