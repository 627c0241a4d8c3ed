/** Typed shapes of the engine's result_json documents. */

export interface ScoreRow {
  node: string;
  value: number;
}

export interface AlgorithmResultDoc {
  algorithm: string;
  rows: Array<{ node: string; value: unknown }>;
  metadata: Record<string, unknown>;
}

export interface MotifMatrixDoc {
  algorithm: "motifs";
  delta: number;
  row_keys: string[];
  col_keys: string[];
  counts: number[][];
  total: number;
  metadata: Record<string, unknown>;
}

export interface WindowedTableDoc {
  algorithm: string;
  windows: string[];
  rows: Record<string, Array<unknown | null>>;
  errors: Record<string, string>;
  metadata: Record<string, unknown>;
}

export interface GraphStats {
  nodes: number;
  edges: number;
  earliest?: number;
  latest?: number;
}

export function parseStats(text: string): GraphStats {
  const stats: GraphStats = { nodes: 0, edges: 0 };
  for (const line of text.trim().split("\n")) {
    const [key, value] = line.split(": ");
    if (key === "nodes") stats.nodes = Number(value);
    else if (key === "edges") stats.edges = Number(value);
    else if (key === "earliest") stats.earliest = Number(value);
    else if (key === "latest") stats.latest = Number(value);
  }
  return stats;
}
