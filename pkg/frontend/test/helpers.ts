import { execFileSync } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

/** Invoke the python CLI as a module so tests don't depend on PATH setup. */
export const PY_CLI = ["python3", "-m", "posebench.cli"];

export function tempDir(prefix = "bindings-test-"): string {
  return mkdtempSync(join(tmpdir(), prefix));
}

/** Run the python CLI directly (for independent cross-checks). */
export function runPythonCli(args: string[]): string {
  return execFileSync("python3", ["-m", "posebench.cli", ...args], {
    encoding: "utf-8",
  });
}

const MAKE_CLIPS = `
import sys
from posebench import get_scheme
from posebench.container import write_pose_file
from posebench.synthetic import signer_clip

out, n, frames, noise = sys.argv[1], int(sys.argv[2]), int(sys.argv[3]), float(sys.argv[4])
coco = get_scheme("coco-wholebody")
for i in range(n):
    clip = signer_clip(coco, frames=frames, seed=i, noise=noise,
                       image_size=(512, 512))
    write_pose_file(f"{out}/clip{i:02d}.spc1", clip)
`;

/** Write n deterministic synthetic SPC1 clips into dir; returns their paths. */
export function makeCorpus(
  dir: string,
  n: number,
  frames = 10,
  noise = 0.8,
): string[] {
  execFileSync("python3", [
    "-c", MAKE_CLIPS, dir, String(n), String(frames), String(noise),
  ]);
  const paths: string[] = [];
  for (let i = 0; i < n; i++) {
    paths.push(join(dir, `clip${String(i).padStart(2, "0")}.spc1`));
  }
  return paths;
}

const JSON_TO_SPC1 = `
import json
import sys
from posebench.container import import_json, write_pose_file
from posebench.schemes import KeypointScheme

src, dst, total, dims = sys.argv[1], sys.argv[2], int(sys.argv[3]), int(sys.argv[4])
with open(src, "r", encoding="utf-8") as f:
    document = json.load(f)
scheme = KeypointScheme(id="test", total=total, dims=dims)
write_pose_file(dst, import_json(document, scheme))
`;

/** Convert an interchange JSON file to SPC1 through the python toolkit. */
export function jsonToSpc1(
  src: string,
  dst: string,
  total: number,
  dims: number,
): void {
  execFileSync("python3", [
    "-c", JSON_TO_SPC1, src, dst, String(total), String(dims),
  ]);
}

/** NaN-aware exact equality for values parsed from the same CSV dialect. */
export function sameNumber(a: number | null, b: number | null): boolean {
  if (a === null || b === null) return a === b;
  return Object.is(a, b);
}
