import { ExternalId } from "./document.js";
import { TimeInput, toTicks } from "./time.js";

export type SemanticsKind = "event" | "persistent";

export interface ViewState {
  window?: [number, number];
  at?: number;
  layers?: string[];
  nodes?: ExternalId[];
  semantics: SemanticsKind;
}

/**
 * Immutable constraint stack mirroring the engine's view operations. The
 * spec is pure data; it serialises to CLI flags (or GraphQL field chains) and
 * the engine resolves all semantics.
 */
export class ViewSpec {
  constructor(readonly state: ViewState = { semantics: "event" }) {}

  window(start: TimeInput, end: TimeInput): ViewSpec {
    const next: [number, number] = [toTicks(start), toTicks(end)];
    const prev = this.state.window;
    const merged: [number, number] = prev
      ? [Math.max(prev[0], next[0]), Math.min(prev[1], next[1])]
      : next;
    return new ViewSpec({ ...this.state, window: merged, at: undefined });
  }

  at(t: TimeInput): ViewSpec {
    return new ViewSpec({ ...this.state, at: toTicks(t), window: undefined });
  }

  layers(names: string[]): ViewSpec {
    const prev = this.state.layers;
    const merged = prev ? names.filter((n) => prev.includes(n)) : [...names];
    return new ViewSpec({ ...this.state, layers: merged });
  }

  subgraph(ids: ExternalId[]): ViewSpec {
    const prev = this.state.nodes;
    const merged = prev
      ? ids.filter((i) => prev.some((p) => String(p) === String(i)))
      : [...ids];
    return new ViewSpec({ ...this.state, nodes: merged });
  }

  semantics(kind: SemanticsKind): ViewSpec {
    return new ViewSpec({ ...this.state, semantics: kind });
  }

  toCliFlags(): string[] {
    const flags: string[] = [];
    const s = this.state;
    if (s.window) flags.push("--window", `${s.window[0]}:${s.window[1]}`);
    if (s.at !== undefined) flags.push("--at", String(s.at));
    if (s.layers) flags.push("--layers", s.layers.join(","));
    if (s.nodes) flags.push("--nodes", s.nodes.map(String).join(","));
    if (s.semantics === "persistent") flags.push("--semantics", "persistent");
    return flags;
  }

  private chainLinks(): string[] {
    const links: string[] = [];
    const s = this.state;
    if (s.window) links.push(`window(start: ${s.window[0]}, end: ${s.window[1]})`);
    if (s.at !== undefined) links.push(`at(time: ${s.at})`);
    if (s.layers) {
      links.push(`layers(names: [${s.layers.map((n) => JSON.stringify(n)).join(", ")}])`);
    }
    if (s.nodes) {
      links.push(`subgraph(ids: [${s.nodes.map((n) => JSON.stringify(String(n))).join(", ")}])`);
    }
    if (s.semantics === "persistent") links.push("semantics(kind: PERSISTENT)");
    return links;
  }

  /** Response keys the chain introduces, in nesting order. */
  chainFieldNames(): string[] {
    return this.chainLinks().map((link) => link.split("(")[0]);
  }

  /** Nested GraphQL field chain, innermost body supplied by the caller. */
  toGraphQLChain(body: string): string {
    let q = body;
    for (const link of this.chainLinks().reverse()) {
      q = `${link} { ${q} }`;
    }
    return q;
  }
}

export function view(): ViewSpec {
  return new ViewSpec();
}
