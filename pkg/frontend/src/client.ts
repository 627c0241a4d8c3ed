import { GraphQLRequestError } from "./errors.js";
import { ViewSpec } from "./view.js";

interface GraphQLResponse {
  data?: Record<string, unknown> | null;
  errors?: Array<{ message: string }>;
}

export interface HealthInfo {
  status: string;
  service: string;
  version: string;
  graphs: string[];
}

/** Thin fetch wrapper for the engine's GraphQL service. */
export class GraphQLClient {
  constructor(readonly baseUrl: string) {}

  async health(): Promise<HealthInfo> {
    const res = await fetch(`${this.baseUrl}/health`);
    if (!res.ok) {
      throw new GraphQLRequestError([`health endpoint returned ${res.status}`]);
    }
    return (await res.json()) as HealthInfo;
  }

  async query(
    document: string,
    variables: Record<string, unknown> = {},
  ): Promise<Record<string, unknown>> {
    const res = await fetch(`${this.baseUrl}/graphql`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ query: document, variables }),
    });
    const doc = (await res.json()) as GraphQLResponse;
    if (doc.errors?.length) {
      throw new GraphQLRequestError(doc.errors.map((e) => e.message));
    }
    if (!res.ok || doc.data === undefined || doc.data === null) {
      throw new GraphQLRequestError([`request failed with status ${res.status}`]);
    }
    return doc.data;
  }

  async graphNames(): Promise<string[]> {
    const data = await this.query("{ graphs { name } }");
    return (data.graphs as Array<{ name: string }>).map((g) => g.name);
  }

  private async viewField<T>(
    graph: string,
    view: ViewSpec,
    body: string,
    leafPath: string[],
  ): Promise<T> {
    const chain = view.toGraphQLChain(body);
    const data = await this.query(`{ graph(name: ${JSON.stringify(graph)}) { ${chain} } }`);
    let node: unknown = data.graph;
    for (const key of [...view.chainFieldNames(), ...leafPath]) {
      node = (node as Record<string, unknown>)[key];
    }
    return node as T;
  }

  countNodes(graph: string, view: ViewSpec = new ViewSpec()): Promise<number> {
    return this.viewField(graph, view, "countNodes", ["countNodes"]);
  }

  countEdges(graph: string, view: ViewSpec = new ViewSpec()): Promise<number> {
    return this.viewField(graph, view, "countEdges", ["countEdges"]);
  }

  pagerank(
    graph: string,
    view: ViewSpec = new ViewSpec(),
  ): Promise<Array<{ node: string; score: number }>> {
    return this.viewField(
      graph, view,
      "algorithms { pagerank { node score } }",
      ["algorithms", "pagerank"],
    );
  }

  temporalMotifs(
    graph: string,
    delta: number,
    view: ViewSpec = new ViewSpec(),
  ): Promise<{ delta: number; rowKeys: string[]; colKeys: string[]; counts: number[][]; total: number }> {
    return this.viewField(
      graph, view,
      `algorithms { temporalMotifs(delta: ${delta}) { delta rowKeys colKeys counts total } }`,
      ["algorithms", "temporalMotifs"],
    );
  }

  temporalReachability(
    graph: string,
    seeds: Array<string | number>,
    start: number,
    view: ViewSpec = new ViewSpec(),
  ): Promise<Array<{ node: string; arrival: number }>> {
    const ids = seeds.map((s) => JSON.stringify(String(s))).join(", ");
    return this.viewField(
      graph, view,
      `algorithms { temporalReachability(seeds: [${ids}], start: ${start}) { node arrival } }`,
      ["algorithms", "temporalReachability"],
    );
  }

  async loadGraph(name: string, path: string): Promise<string> {
    const data = await this.query(
      "mutation($name: String!, $path: String!) { loadGraph(name: $name, path: $path) { name } }",
      { name, path },
    );
    return (data.loadGraph as { name: string }).name;
  }
}
