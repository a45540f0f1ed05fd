// Report generators.  Each one shells out to the posebench CLI with a
// temporary output directory, parses the CSV/JSON the tool wrote, and hands
// the values back as plain objects.  The numbers are the CLI's numbers —
// nothing is recomputed on this side.

import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, parse as parsePath } from "node:path";

import { CliOptions, runCli } from "./cli";
import { numericCell, parseCsv } from "./csv";
import { PoseError } from "./errors";

export interface ReportOptions extends CliOptions {
  /** Scheme id overriding file headers (built-in or on POSEBENCH_SCHEME_DIR). */
  scheme?: string;
  /** Path to a descriptor JSON file, taking precedence over `scheme`. */
  schemeFile?: string;
  /** Frame rate assumed for interchange JSON inputs. */
  fps?: number;
  /** Coordinates use mathematical y-up axes. */
  yUp?: boolean;
  /** Parallel file loads inside the CLI. */
  jobs?: number;
}

function commonFlags(options: ReportOptions): string[] {
  const flags: string[] = [];
  if (options.scheme !== undefined) flags.push("--scheme", options.scheme);
  if (options.schemeFile !== undefined) {
    flags.push("--scheme-file", options.schemeFile);
  }
  if (options.fps !== undefined) flags.push("--fps", String(options.fps));
  if (options.yUp) flags.push("--y-up");
  if (options.jobs !== undefined) flags.push("--jobs", String(options.jobs));
  return flags;
}

function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "posebench-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function requireInputs(inputs: string[]): void {
  if (inputs.length === 0) {
    throw new PoseError("no inputs given");
  }
}

// ── stability ───────────────────────────────────────────────────────────────

export interface AggregateRow {
  region: string;
  metric: string;
  median: number;
  q1: number;
  q3: number;
  n: number;
}

export interface SequenceRow {
  sequence_id: string;
  region: string;
  E_v_x100: number | null;
  J_acc_x100: number | null;
  J_jerk_x100: number | null;
}

export interface StabilityResult {
  aggregates: AggregateRow[];
  sequences: SequenceRow[];
}

export interface StabilityOptions extends ReportOptions {
  /** Region names, e.g. ["all", "hands", "face"] (the CLI's default). */
  regions?: string[];
}

/**
 * Temporal-stability report over a corpus: per-sequence metric rows plus
 * corpus quartiles per (region, metric), identical to the CLI's two CSVs.
 */
export function stabilityReport(
  inputs: string[],
  options: StabilityOptions = {},
): StabilityResult {
  requireInputs(inputs);
  return withTempDir((dir) => {
    const args = ["stability", ...inputs, ...commonFlags(options)];
    if (options.regions !== undefined) {
      args.push("--regions", options.regions.join(","));
    }
    args.push("--out", dir);
    runCli(args, options);

    const aggRows = parseCsv(
      readFileSync(join(dir, "stability_aggregates.csv"), "utf-8"));
    const aggregates: AggregateRow[] = aggRows.slice(1).map((row) => ({
      region: row[0],
      metric: row[1],
      median: Number(row[2]),
      q1: Number(row[3]),
      q3: Number(row[4]),
      n: Number(row[5]),
    }));

    const seqRows = parseCsv(
      readFileSync(join(dir, "stability_sequences.csv"), "utf-8"));
    const sequences: SequenceRow[] = seqRows.slice(1).map((row) => ({
      sequence_id: row[0],
      region: row[1],
      E_v_x100: numericCell(row[2]),
      J_acc_x100: numericCell(row[3]),
      J_jerk_x100: numericCell(row[4]),
    }));
    return { aggregates, sequences };
  });
}

// ── hands ───────────────────────────────────────────────────────────────────

export interface HandsEstimator {
  pct_left: number[];
  pct_right: number[];
  pct_both: number[];
  n_signing_frames: number;
  n_total_frames: number;
}

export interface HandsResult {
  thresholds: number[];
  estimators: Record<string, HandsEstimator>;
}

export interface HandsOptions extends ReportOptions {
  /** Sweep thresholds in (0, 1], ascending (the CLI defaults to 0.1..1.0). */
  thresholds?: number[];
}

/**
 * Missing-hand sweep, grouped by estimator directory exactly as the CLI
 * does.  Returns the parsed hands.json document.
 */
export function handsReport(
  inputs: string[],
  options: HandsOptions = {},
): HandsResult {
  requireInputs(inputs);
  return withTempDir((dir) => {
    const args = ["hands", ...inputs, ...commonFlags(options)];
    if (options.thresholds !== undefined) {
      args.push("--thresholds", options.thresholds.join(","));
    }
    args.push("--out", dir);
    runCli(args, options);
    return JSON.parse(
      readFileSync(join(dir, "hands.json"), "utf-8")) as HandsResult;
  });
}

// ── preprocess ──────────────────────────────────────────────────────────────

export interface FeatureMatrix {
  /** One Float64Array of length D per frame. */
  features: Float64Array[];
  /** Column names, e.g. "k23_x". */
  header: string[];
  schemeId: string;
  keptIndices: number[];
  D: number;
  dims: number;
  frames: number;
  fps: number;
}

export interface PreprocessOptions extends ReportOptions {
  /** Keep leg/foot keypoints instead of dropping them. */
  keepLegs?: boolean;
}

/**
 * Translation-input feature matrix for one clip, read back from the CLI's
 * {clip}_features.csv / {clip}_meta.json pair.
 */
export function preprocess(
  path: string,
  options: PreprocessOptions = {},
): FeatureMatrix {
  return withTempDir((dir) => {
    const args = ["preprocess", path, ...commonFlags(options)];
    if (options.keepLegs) args.push("--keep-legs");
    args.push("--out", dir);
    runCli(args, options);

    const stem = parsePath(path).name;
    const meta = JSON.parse(
      readFileSync(join(dir, `${stem}_meta.json`), "utf-8"));
    const rows = parseCsv(
      readFileSync(join(dir, `${stem}_features.csv`), "utf-8"));
    const header = rows[0];
    const features = rows.slice(1).map((row) => {
      const out = new Float64Array(row.length);
      for (let j = 0; j < row.length; j++) out[j] = Number(row[j]);
      return out;
    });
    return {
      features,
      header,
      schemeId: meta.scheme_id,
      keptIndices: meta.kept_indices,
      D: meta.D,
      dims: meta.dims,
      frames: meta.frames,
      fps: meta.fps,
    };
  });
}
