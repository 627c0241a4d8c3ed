import { writeFileSync } from "node:fs";
import {
  EdgeDoc,
  ExternalId,
  GraphDocument,
  NodeDoc,
  PropMap,
  canonicalJson,
  idSortKey,
} from "./document.js";
import { TimeInput, toTicks } from "./time.js";

const DEFAULT_LAYER = "_default";

interface Update {
  t: number;
  seq: number;
}

/**
 * Accumulates update events client-side and serialises them as a graph
 * document the engine ingests. No graph semantics live here: ordering,
 * deletion resolution and queries all happen engine-side.
 */
export class TemporalGraphBuilder {
  private seq = 0;
  private layers = new Set<string>([DEFAULT_LAYER]);
  private nodes = new Map<ExternalId, Array<Update & { props: PropMap }>>();
  private edges = new Map<
    string,
    {
      source: ExternalId;
      target: ExternalId;
      layers: Map<string, { additions: Array<Update & { props: PropMap }>; deletions: Update[] }>;
    }
  >();

  addNode(t: TimeInput, id: ExternalId, props: PropMap = {}): this {
    const updates = this.nodes.get(id) ?? [];
    updates.push({ t: toTicks(t), seq: this.seq++, props });
    this.nodes.set(id, updates);
    return this;
  }

  addEdge(
    t: TimeInput,
    source: ExternalId,
    target: ExternalId,
    props: PropMap = {},
    layer: string = DEFAULT_LAYER,
  ): this {
    const hist = this.layerHistory(source, target, layer);
    hist.additions.push({ t: toTicks(t), seq: this.seq++, props });
    return this;
  }

  deleteEdge(
    t: TimeInput,
    source: ExternalId,
    target: ExternalId,
    layer: string = DEFAULT_LAYER,
  ): this {
    const hist = this.layerHistory(source, target, layer);
    hist.deletions.push({ t: toTicks(t), seq: this.seq++ });
    return this;
  }

  private layerHistory(source: ExternalId, target: ExternalId, layer: string) {
    this.layers.add(layer);
    const key = JSON.stringify([source, target]);
    let edge = this.edges.get(key);
    if (edge === undefined) {
      edge = { source, target, layers: new Map() };
      this.edges.set(key, edge);
    }
    let hist = edge.layers.get(layer);
    if (hist === undefined) {
      hist = { additions: [], deletions: [] };
      edge.layers.set(layer, hist);
    }
    return hist;
  }

  /** Events sorted per entity by (time, insertion order), entities by id. */
  toDocument(): GraphDocument {
    const byEvent = (a: Update, b: Update) => a.t - b.t || a.seq - b.seq;

    // edge endpoints are graph nodes even without explicit updates
    const allIds = new Map<string, ExternalId>();
    for (const id of this.nodes.keys()) allIds.set(JSON.stringify(id), id);
    for (const edge of this.edges.values()) {
      allIds.set(JSON.stringify(edge.source), edge.source);
      allIds.set(JSON.stringify(edge.target), edge.target);
    }
    const nodes: NodeDoc[] = [...allIds.values()]
      .sort(idSortKey)
      .map((id) => ({
        id,
        updates: [...(this.nodes.get(id) ?? [])]
          .sort(byEvent)
          .map((u) => [u.t, u.props] as [number, PropMap]),
      }));

    const edges: EdgeDoc[] = [...this.edges.values()]
      .sort((a, b) => idSortKey(a.source, b.source) || idSortKey(a.target, b.target))
      .map((edge) => {
        const layers: EdgeDoc["layers"] = {};
        for (const name of [...edge.layers.keys()].sort()) {
          const hist = edge.layers.get(name)!;
          layers[name] = {
            additions: [...hist.additions].sort(byEvent).map((u) => [u.t, u.props]),
            deletions: [...hist.deletions].sort(byEvent).map((u) => u.t),
          };
        }
        return { source: edge.source, target: edge.target, layers };
      });

    return {
      format_version: 1,
      layers: [...this.layers].sort(),
      graph: { constant: {}, temporal: {} },
      nodes,
      edges,
    };
  }

  save(path: string): string {
    writeFileSync(path, canonicalJson(this.toDocument()) + "\n", "utf-8");
    return path;
  }
}
