import { spawn, spawnSync } from "node:child_process";
import { EngineError } from "./errors.js";
import {
  AlgorithmResultDoc,
  GraphStats,
  MotifMatrixDoc,
  WindowedTableDoc,
  parseStats,
} from "./results.js";
import { ViewSpec } from "./view.js";

export interface EngineOptions {
  /** Command that runs the engine CLI; defaults to `python3 -m tgraph.cli`. */
  command?: string[];
}

export interface LoadOptions {
  delimiter?: string;
  header?: boolean;
  sourceColumn?: string;
  targetColumn?: string;
  timeColumn?: string;
  timeFormat?: "epoch_seconds" | "epoch_millis" | "rfc3339";
  layerColumn?: string;
  layer?: string;
  properties?: Array<[string, "int" | "float" | "str" | "bool"]>;
  idType?: "str" | "int";
  strict?: boolean;
}

export interface PageRankOptions {
  damping?: number;
  tolerance?: number;
  maxIterations?: number;
  top?: number;
}

export interface LoadSummary {
  graphPath: string;
  loaded: number;
  errors: number;
}

function defaultCommand(): string[] {
  const env = process.env.TGRAPH_PYTHON;
  return env ? [env, "-m", "tgraph.cli"] : ["python3", "-m", "tgraph.cli"];
}

/**
 * Runs the engine CLI; one subprocess per call. All semantics stay
 * engine-side; this class only assembles flags and parses outputs.
 */
export class EngineCli {
  private readonly command: string[];

  constructor(options: EngineOptions = {}) {
    this.command = options.command ?? defaultCommand();
  }

  invoke(args: string[]): { stdout: string; stderr: string } {
    const [cmd, ...base] = this.command;
    const result = spawnSync(cmd, [...base, ...args], {
      encoding: "utf-8",
      maxBuffer: 64 * 1024 * 1024,
    });
    if (result.error) {
      throw result.error;
    }
    if (result.status !== 0) {
      throw new EngineError(result.status ?? -1, result.stderr ?? "");
    }
    return { stdout: result.stdout, stderr: result.stderr };
  }

  /** io.load_edges + graph_json export, via `tgraph load`. */
  loadEdges(csvPath: string, graphPath: string, options: LoadOptions = {}): LoadSummary {
    const args = ["load", "--input", csvPath, "--graph", graphPath];
    if (options.delimiter) args.push("--delimiter", options.delimiter);
    if (options.header === false) args.push("--no-header");
    if (options.sourceColumn) args.push("--source-column", options.sourceColumn);
    if (options.targetColumn) args.push("--target-column", options.targetColumn);
    if (options.timeColumn) args.push("--time-column", options.timeColumn);
    if (options.timeFormat) args.push("--time-format", options.timeFormat);
    if (options.layerColumn) args.push("--layer-column", options.layerColumn);
    if (options.layer) args.push("--layer", options.layer);
    for (const [column, tag] of options.properties ?? []) {
      args.push("--property", `${column}:${tag}`);
    }
    if (options.idType) args.push("--id-type", options.idType);
    if (options.strict) args.push("--strict");
    const { stdout } = this.invoke(args);
    const m = /loaded (\d+) edges?, (\d+) errors?/.exec(stdout);
    return {
      graphPath,
      loaded: m ? Number(m[1]) : 0,
      errors: m ? Number(m[2]) : 0,
    };
  }

  stats(graphPath: string): GraphStats {
    return parseStats(this.invoke(["stats", "--graph", graphPath]).stdout);
  }

  private run(graphPath: string, algorithm: string, view: ViewSpec, extra: string[]): string {
    const args = [
      "run", "--graph", graphPath, "--algorithm", algorithm,
      ...view.toCliFlags(), ...extra, "--format", "json",
    ];
    return this.invoke(args).stdout;
  }

  pagerank(graphPath: string, view: ViewSpec = new ViewSpec(), options: PageRankOptions = {}): AlgorithmResultDoc {
    const extra: string[] = [];
    if (options.damping !== undefined) extra.push("--damping", String(options.damping));
    if (options.tolerance !== undefined) extra.push("--tolerance", String(options.tolerance));
    if (options.maxIterations !== undefined) extra.push("--max-iterations", String(options.maxIterations));
    if (options.top !== undefined) extra.push("--top", String(options.top));
    return JSON.parse(this.run(graphPath, "pagerank", view, extra));
  }

  pagerankRolling(
    graphPath: string,
    size: number,
    view: ViewSpec = new ViewSpec(),
    step?: number,
  ): WindowedTableDoc {
    const rolling = step === undefined ? String(size) : `${size}:${step}`;
    return JSON.parse(this.run(graphPath, "pagerank", view, ["--rolling", rolling]));
  }

  degree(graphPath: string, view: ViewSpec = new ViewSpec()): AlgorithmResultDoc {
    return JSON.parse(this.run(graphPath, "degree", view, []));
  }

  degreeExpanding(graphPath: string, step: number, view: ViewSpec = new ViewSpec()): WindowedTableDoc {
    return JSON.parse(this.run(graphPath, "degree", view, ["--expanding", String(step)]));
  }

  temporalMotifs(graphPath: string, delta: number, view: ViewSpec = new ViewSpec()): MotifMatrixDoc {
    return JSON.parse(this.run(graphPath, "motifs", view, ["--delta", String(delta)]));
  }

  temporalReachability(
    graphPath: string,
    seeds: Array<string | number>,
    start: number,
    view: ViewSpec = new ViewSpec(),
    maxHops?: number,
  ): AlgorithmResultDoc {
    const extra = ["--seeds", seeds.map(String).join(","), "--start", String(start)];
    if (maxHops !== undefined) extra.push("--max-hops", String(maxHops));
    return JSON.parse(this.run(graphPath, "reachability", view, extra));
  }

  /** graph_json of the view: the engine-side materialisation of it. */
  materialise(graphPath: string, view: ViewSpec, outputPath: string): string {
    this.invoke([
      "export", "--graph", graphPath, "--format", "json",
      ...view.toCliFlags(), "--output", outputPath,
    ]);
    return outputPath;
  }

  exportEdgeListCsv(graphPath: string, outputPath: string, view: ViewSpec = new ViewSpec()): string {
    this.invoke([
      "export", "--graph", graphPath, "--format", "csv",
      ...view.toCliFlags(), "--output", outputPath,
    ]);
    return outputPath;
  }

  exportGraphJsonText(graphPath: string): string {
    return this.invoke(["export", "--graph", graphPath, "--format", "json"]).stdout;
  }

  /** Start `tgraph serve`; resolves once the listen line appears on stderr. */
  serve(graphDir: string, port = 0): Promise<{ url: string; stop: () => void }> {
    const [cmd, ...base] = this.command;
    const child = spawn(cmd, [
      ...base, "serve", "--graph-dir", graphDir, "--port", String(port),
    ]);
    return new Promise((resolve, reject) => {
      let buffer = "";
      const onData = (chunk: Buffer) => {
        buffer += chunk.toString();
        const m = /listening on (http:\/\/[^/\s]+)\/graphql/.exec(buffer);
        if (m) {
          child.stderr.off("data", onData);
          resolve({ url: m[1], stop: () => child.kill() });
        }
      };
      child.stderr.on("data", onData);
      child.on("error", reject);
      child.on("exit", (code) => reject(new EngineError(code ?? -1, buffer)));
    });
  }
}
