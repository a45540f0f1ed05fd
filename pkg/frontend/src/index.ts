export {
  BadMagic,
  CliError,
  ContainerError,
  CountMismatch,
  MalformedPayload,
  PoseError,
  UnsupportedVersion,
} from "./errors";

export {
  BoundSequence,
  importJson,
  load,
  loadScheme,
  parseSpc1,
} from "./container";
export type { LoadOptions, SchemeInfo } from "./container";

export { cliCommand, runCli } from "./cli";
export type { CliOptions } from "./cli";

export { numericCell, parseCsv } from "./csv";

export { handsReport, preprocess, stabilityReport } from "./reports";
export type {
  AggregateRow,
  FeatureMatrix,
  HandsEstimator,
  HandsOptions,
  HandsResult,
  PreprocessOptions,
  ReportOptions,
  SequenceRow,
  StabilityOptions,
  StabilityResult,
} from "./reports";
