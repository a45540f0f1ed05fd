import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { basename, join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import {
  CliError,
  PoseError,
  handsReport,
  parseCsv,
  preprocess,
  stabilityReport,
} from "../src/index";
import {
  PY_CLI,
  makeCorpus,
  runPythonCli,
  sameNumber,
  tempDir,
} from "./helpers";

const OPTS = { cli: PY_CLI };

let estDir: string;
let files: string[];

beforeAll(() => {
  // five clips under one estimator directory, the layout every command walks
  estDir = join(tempDir(), "estA");
  mkdirSync(estDir);
  files = makeCorpus(estDir, 5, 10, 0.8);
});

describe("stabilityReport", () => {
  it("returns every cell of the CLI's CSVs unchanged", () => {
    const result = stabilityReport(files, OPTS);

    // independent CLI run for comparison
    const out = tempDir();
    runPythonCli(["stability", ...files, "--out", out]);
    const aggCsv = parseCsv(
      readFileSync(join(out, "stability_aggregates.csv"), "utf-8"));
    const seqCsv = parseCsv(
      readFileSync(join(out, "stability_sequences.csv"), "utf-8"));

    expect(aggCsv[0]).toEqual(["region", "metric", "median", "q1", "q3", "n"]);
    expect(result.aggregates.length).toBe(aggCsv.length - 1);
    expect(result.aggregates.length).toBe(9); // 3 regions x 3 metrics
    aggCsv.slice(1).forEach((row, i) => {
      const agg = result.aggregates[i];
      expect(agg.region).toBe(row[0]);
      expect(agg.metric).toBe(row[1]);
      expect(sameNumber(agg.median, Number(row[2]))).toBe(true);
      expect(sameNumber(agg.q1, Number(row[3]))).toBe(true);
      expect(sameNumber(agg.q3, Number(row[4]))).toBe(true);
      expect(agg.n).toBe(Number(row[5]));
    });

    expect(seqCsv[0]).toEqual(
      ["sequence_id", "region", "E_v_x100", "J_acc_x100", "J_jerk_x100"]);
    expect(result.sequences.length).toBe(seqCsv.length - 1);
    expect(result.sequences.length).toBe(15); // 5 sequences x 3 regions
    seqCsv.slice(1).forEach((row, i) => {
      const seq = result.sequences[i];
      expect(seq.sequence_id).toBe(row[0]);
      expect(seq.region).toBe(row[1]);
      const cells = [seq.E_v_x100, seq.J_acc_x100, seq.J_jerk_x100];
      for (let j = 0; j < 3; j++) {
        const raw = row[2 + j];
        const expected = raw === "" ? null : Number(raw);
        expect(sameNumber(cells[j], expected)).toBe(true);
      }
    });
  });

  it("passes region selections through", () => {
    const result = stabilityReport(files, {
      ...OPTS,
      regions: ["left_hand", "right_hand"],
    });
    expect(result.aggregates.map((a) => a.region)).toEqual([
      "left_hand", "left_hand", "left_hand",
      "right_hand", "right_hand", "right_hand",
    ]);
    expect(result.sequences.length).toBe(10);
  });

  it("reports absent metrics as null and their aggregates as empty", () => {
    const dir = tempDir();
    const [shortClip] = makeCorpus(dir, 1, 3); // too short for jerk
    const result = stabilityReport([shortClip], OPTS);
    for (const row of result.sequences) {
      expect(row.E_v_x100).not.toBeNull();
      expect(row.J_acc_x100).not.toBeNull();
      expect(row.J_jerk_x100).toBeNull();
    }
    const jerk = result.aggregates.filter((a) => a.metric === "J_jerk");
    expect(jerk.length).toBe(3);
    for (const agg of jerk) {
      expect(agg.n).toBe(0);
      expect(Number.isNaN(agg.median)).toBe(true);
    }
  });

  it("rejects an empty input list", () => {
    expect(() => stabilityReport([], OPTS)).toThrow(PoseError);
    expect(() => stabilityReport([], OPTS)).toThrow(/no inputs/);
  });

  it("propagates the CLI's diagnostics for unreadable corpora", () => {
    const dir = tempDir();
    const garbage = join(dir, "broken.spc1");
    writeFileSync(garbage, "not a pose stream");
    let caught: unknown;
    try {
      stabilityReport([garbage], OPTS);
    } catch (err) {
      caught = err;
    }
    expect(caught).toBeInstanceOf(CliError);
    expect((caught as CliError).stderr).toContain(
      "neither an SPC1 stream nor interchange JSON");
  });
});

describe("preprocess", () => {
  it("returns every feature cell of the CLI's CSV unchanged", () => {
    // independent CLI run over the whole directory
    const out = tempDir();
    runPythonCli(["preprocess", estDir, "--out", out]);

    for (const file of files) {
      const fm = preprocess(file, OPTS);
      const stem = basename(file, ".spc1");
      const csv = parseCsv(
        readFileSync(join(out, `${stem}_features.csv`), "utf-8"));

      expect(fm.header).toEqual(csv[0]);
      expect(fm.D).toBe(246); // 123 kept keypoints x 2 dims
      expect(fm.header.length).toBe(fm.D);
      expect(fm.frames).toBe(10);
      expect(fm.features.length).toBe(csv.length - 1);
      csv.slice(1).forEach((row, f) => {
        expect(row.length).toBe(fm.D);
        for (let j = 0; j < row.length; j++) {
          expect(sameNumber(fm.features[f][j], Number(row[j]))).toBe(true);
        }
      });
      expect(fm.schemeId).toBe("coco-wholebody");
      expect(fm.keptIndices.length * fm.dims).toBe(fm.D);
    }
  });

  it("keeps leg keypoints on request", () => {
    const fm = preprocess(files[0], { ...OPTS, keepLegs: true });
    expect(fm.D).toBe(266); // all 133 keypoints x 2 dims
    expect(fm.header[0]).toBe("k0_x");
  });
});

describe("handsReport", () => {
  it("parses the per-estimator sweep document", () => {
    const result = handsReport([estDir], OPTS);
    expect(result.thresholds).toEqual(
      [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]);
    expect(Object.keys(result.estimators)).toEqual(["estA"]);

    const est = result.estimators.estA;
    expect(est.n_total_frames).toBe(50);
    expect(est.n_signing_frames).toBe(50); // synthetic clips always sign
    for (const pcts of [est.pct_left, est.pct_right, est.pct_both]) {
      expect(pcts.length).toBe(10);
      for (let i = 1; i < pcts.length; i++) {
        expect(pcts[i]).toBeLessThanOrEqual(pcts[i - 1]);
      }
      for (const p of pcts) {
        expect(p).toBeGreaterThanOrEqual(0);
        expect(p).toBeLessThanOrEqual(100);
      }
    }
    for (let i = 0; i < 10; i++) {
      expect(est.pct_both[i]).toBeLessThanOrEqual(
        Math.min(est.pct_left[i], est.pct_right[i]));
    }
  });

  it("passes custom thresholds through", () => {
    const result = handsReport([estDir], { ...OPTS, thresholds: [0.25, 0.75] });
    expect(result.thresholds).toEqual([0.25, 0.75]);
    expect(result.estimators.estA.pct_left.length).toBe(2);
  });
});
