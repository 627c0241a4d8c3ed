/** Engine errors surface with the category implied by the CLI exit code. */

export type EngineErrorKind = "usage" | "load" | "algorithm" | "internal";

const KIND_BY_EXIT: Record<number, EngineErrorKind> = {
  1: "usage",
  2: "load",
  3: "algorithm",
};

export class EngineError extends Error {
  readonly kind: EngineErrorKind;
  readonly exitCode: number;
  readonly stderr: string;

  constructor(exitCode: number, stderr: string) {
    const kind = KIND_BY_EXIT[exitCode] ?? "internal";
    super(`engine ${kind} error (exit ${exitCode}): ${stderr.trim()}`);
    this.name = "EngineError";
    this.kind = kind;
    this.exitCode = exitCode;
    this.stderr = stderr;
  }
}

export class GraphQLRequestError extends Error {
  readonly messages: string[];

  constructor(messages: string[]) {
    super(messages.join("; "));
    this.name = "GraphQLRequestError";
    this.messages = messages;
  }
}
