export { TemporalGraphBuilder } from "./builder.js";
export { GraphQLClient } from "./client.js";
export type { HealthInfo } from "./client.js";
export type {
  EdgeDoc,
  ExternalId,
  GraphDocument,
  NodeDoc,
  PropMap,
  PropValue,
} from "./document.js";
export { idSortKey } from "./document.js";
export { EngineCli } from "./engine.js";
export type {
  EngineOptions,
  LoadOptions,
  LoadSummary,
  PageRankOptions,
} from "./engine.js";
export { EngineError, GraphQLRequestError } from "./errors.js";
export type { EngineErrorKind } from "./errors.js";
export type {
  AlgorithmResultDoc,
  GraphStats,
  MotifMatrixDoc,
  ScoreRow,
  WindowedTableDoc,
} from "./results.js";
export { parseStats } from "./results.js";
export { toTicks } from "./time.js";
export type { TimeInput } from "./time.js";
export { ViewSpec, view } from "./view.js";
export type { SemanticsKind, ViewState } from "./view.js";
