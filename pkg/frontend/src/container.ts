// SPC1 / interchange-JSON reading, kept byte-for-byte faithful to the python
// reader: same field order, same validation, same diagnostic text and byte
// offsets.  Nothing here computes metrics — this module only moves data.

import { readFileSync } from "node:fs";

import {
  BadMagic,
  CountMismatch,
  MalformedPayload,
  PoseError,
  UnsupportedVersion,
} from "./errors";

const MAGIC = Uint8Array.from([0x53, 0x50, 0x43, 0x31]); // "SPC1"
const VERSION = 1;
const FLAG_IMAGE_SIZE = 0x01;
const FLAG_3D = 0x02;

/** The scheme facts the reader needs; matches the descriptor JSON fields. */
export interface SchemeInfo {
  id?: string;
  total: number;
  dims: 2 | 3;
  has_confidence?: boolean;
}

/**
 * One estimator's output for one clip.  Coordinates and confidences are
 * exposed as flat frame-major Float64Arrays (shapes F*K*dims and F*K); the
 * arrays are views on the handle's own storage — do not mutate them.
 */
export class BoundSequence {
  readonly schemeId: string;
  readonly fps: number;
  readonly imageSize: readonly [number, number] | null;
  readonly frameCount: number;
  readonly keypointCount: number;
  readonly dims: number;
  private readonly _coords: Float64Array;
  private readonly _conf: Float64Array;

  constructor(
    coords: Float64Array,
    conf: Float64Array,
    frames: number,
    keypoints: number,
    dims: number,
    schemeId = "",
    fps = 25.0,
    imageSize: readonly [number, number] | null = null,
  ) {
    if (coords.length !== frames * keypoints * dims) {
      throw new PoseError("coords length does not match declared shape");
    }
    if (conf.length !== frames * keypoints) {
      throw new PoseError("confidence length does not match declared shape");
    }
    this._coords = coords;
    this._conf = conf;
    this.frameCount = frames;
    this.keypointCount = keypoints;
    this.dims = dims;
    this.schemeId = schemeId;
    this.fps = fps;
    this.imageSize = imageSize;
  }

  /** Flat frame-major coordinates, length frameCount*keypointCount*dims. */
  coords(): Float64Array {
    return this._coords;
  }

  /** Flat frame-major confidences in [0, 1], length frameCount*keypointCount. */
  confidence(): Float64Array {
    return this._conf;
  }

  /** One keypoint's coordinates: [x, y] or [x, y, z]. */
  point(frame: number, keypoint: number): number[] {
    const base = (frame * this.keypointCount + keypoint) * this.dims;
    return Array.from(this._coords.subarray(base, base + this.dims));
  }

  /** One keypoint's confidence. */
  confidenceAt(frame: number, keypoint: number): number {
    return this._conf[frame * this.keypointCount + keypoint];
  }
}

// ── SPC1 ────────────────────────────────────────────────────────────────────

/** Renders bytes the way python's repr() does, for matching diagnostics. */
function reprBytes(bytes: Uint8Array): string {
  let out = "b'";
  for (const b of bytes) {
    if (b === 0x27) out += "\\'";
    else if (b === 0x5c) out += "\\\\";
    else if (b === 0x09) out += "\\t";
    else if (b === 0x0a) out += "\\n";
    else if (b === 0x0d) out += "\\r";
    else if (b >= 0x20 && b <= 0x7e) out += String.fromCharCode(b);
    else out += "\\x" + b.toString(16).padStart(2, "0");
  }
  return out + "'";
}

class Cursor {
  readonly data: Uint8Array;
  readonly view: DataView;
  pos = 0;

  constructor(data: Uint8Array) {
    this.data = data;
    this.view = new DataView(data.buffer, data.byteOffset, data.byteLength);
  }

  take(n: number, what: string): Uint8Array {
    if (this.pos + n > this.data.length) {
      throw new MalformedPayload(
        `stream truncated while reading ${what}`, this.pos);
    }
    const chunk = this.data.subarray(this.pos, this.pos + n);
    this.pos += n;
    return chunk;
  }

  u8(what: string): number {
    this.take(1, what);
    return this.view.getUint8(this.pos - 1);
  }

  u16(what: string): number {
    this.take(2, what);
    return this.view.getUint16(this.pos - 2, true);
  }

  u32(what: string): number {
    this.take(4, what);
    return this.view.getUint32(this.pos - 4, true);
  }

  f32(what: string): number {
    this.take(4, what);
    return this.view.getFloat32(this.pos - 4, true);
  }
}

function bytesEqual(a: Uint8Array, b: Uint8Array): boolean {
  return a.length === b.length && a.every((v, i) => v === b[i]);
}

/** Parse SPC1 bytes, rejecting anything structurally unsound. */
export function parseSpc1(data: Uint8Array): BoundSequence {
  const cur = new Cursor(data);
  const magic = cur.take(4, "magic");
  if (!bytesEqual(magic, MAGIC)) {
    throw new BadMagic(
      `expected ${reprBytes(MAGIC)}, found ${reprBytes(magic)}`, 0);
  }
  const version = cur.u16("version");
  if (version !== VERSION) {
    throw new UnsupportedVersion(`unsupported version ${version}`, 4);
  }
  const idLen = cur.u8("scheme id length");
  const idOffset = cur.pos;
  let schemeId: string;
  try {
    schemeId = new TextDecoder("utf-8", { fatal: true })
      .decode(cur.take(idLen, "scheme id"));
  } catch {
    throw new MalformedPayload("scheme id is not UTF-8", idOffset);
  }
  const fpsOffset = cur.pos;
  const fps = cur.f32("fps");
  if (!Number.isFinite(fps) || fps <= 0) {
    throw new MalformedPayload(`fps must be positive, got ${fps}`, fpsOffset);
  }
  const flagsOffset = cur.pos;
  const flags = cur.u8("flags");
  if (flags & ~(FLAG_IMAGE_SIZE | FLAG_3D)) {
    throw new MalformedPayload(
      `unknown flag bits 0x${flags.toString(16).padStart(2, "0")}`,
      flagsOffset);
  }
  let imageSize: [number, number] | null = null;
  if (flags & FLAG_IMAGE_SIZE) {
    const sizeOffset = cur.pos;
    const w = cur.u16("image size");
    const h = cur.u16("image size");
    if (w < 1 || h < 1) {
      throw new MalformedPayload("image size must be positive", sizeOffset);
    }
    imageSize = [w, h];
  }
  const countsOffset = cur.pos;
  const frames = cur.u32("frame/keypoint counts");
  const points = cur.u16("frame/keypoint counts");
  if (frames < 1 || points < 1) {
    throw new MalformedPayload(
      "frame and keypoint counts must be >= 1", countsOffset);
  }
  const dims = flags & FLAG_3D ? 3 : 2;
  const payloadOffset = cur.pos;
  const expected = frames * points * (dims + 1) * 4;
  const available = data.length - cur.pos;
  if (available < expected) {
    throw new MalformedPayload(
      `payload needs ${expected} bytes, only ${available} remain ` +
      "(count mismatch between header and payload)", data.length);
  }
  if (available > expected) {
    throw new MalformedPayload(
      `${available - expected} trailing bytes after payload`,
      payloadOffset + expected);
  }

  const coords = new Float64Array(frames * points * dims);
  const conf = new Float64Array(frames * points);
  const stride = dims + 1;
  for (let r = 0; r < frames * points; r++) {
    const base = payloadOffset + r * stride * 4;
    for (let d = 0; d < dims; d++) {
      const v = cur.view.getFloat32(base + d * 4, true);
      if (!Number.isFinite(v)) {
        throw new MalformedPayload("non-finite coordinate", base + d * 4);
      }
      coords[r * dims + d] = v;
    }
    const c = cur.view.getFloat32(base + dims * 4, true);
    if (!Number.isFinite(c) || c < 0 || c > 1) {
      throw new MalformedPayload(
        "confidence outside [0, 1]", base + dims * 4);
    }
    conf[r] = c;
  }
  return new BoundSequence(
    coords, conf, frames, points, dims, schemeId, fps, imageSize);
}

// ── interchange JSON ────────────────────────────────────────────────────────

/**
 * Build a sequence from the interchange form: a list of frames, each a list
 * of [x, y(, z), c] records.  A record may omit the confidence, which then
 * defaults to 1.
 */
export function importJson(
  document: unknown,
  scheme: SchemeInfo,
  fps = 25.0,
  imageSize: readonly [number, number] | null = null,
): BoundSequence {
  if (!Array.isArray(document) || document.length === 0) {
    throw new MalformedPayload("document must be a non-empty list of frames");
  }
  const dims = scheme.dims;
  const frames = document.length;
  const coords = new Float64Array(frames * scheme.total * dims);
  const conf = new Float64Array(frames * scheme.total).fill(1);
  for (let f = 0; f < frames; f++) {
    const frame = document[f];
    if (!Array.isArray(frame)) {
      throw new MalformedPayload(`frame ${f} is not a list`);
    }
    if (frame.length !== scheme.total) {
      throw new CountMismatch(
        `frame ${f} has ${frame.length} keypoints, ` +
        `scheme '${scheme.id ?? ""}' expects ${scheme.total}`);
    }
    for (let k = 0; k < scheme.total; k++) {
      const entry = frame[k];
      if (!Array.isArray(entry) ||
          (entry.length !== dims && entry.length !== dims + 1)) {
        throw new MalformedPayload(
          `frame ${f} keypoint ${k}: expected ${dims} or ${dims + 1} ` +
          "numbers per record");
      }
      for (const v of entry) {
        if (typeof v !== "number" || !Number.isFinite(v)) {
          throw new MalformedPayload(
            `frame ${f} keypoint ${k}: non-numeric value ${JSON.stringify(v)}`);
        }
      }
      for (let d = 0; d < dims; d++) {
        coords[(f * scheme.total + k) * dims + d] = entry[d];
      }
      if (entry.length === dims + 1) {
        const c = entry[dims];
        if (c < 0 || c > 1) {
          throw new MalformedPayload(
            `frame ${f} keypoint ${k}: confidence ${c} outside [0, 1]`);
        }
        if (scheme.has_confidence === false && c !== 1) {
          throw new MalformedPayload(
            `frame ${f} keypoint ${k}: scheme '${scheme.id ?? ""}' carries ` +
            "no confidence channel, records must have c = 1");
        }
        conf[f * scheme.total + k] = c;
      }
    }
  }
  return new BoundSequence(
    coords, conf, frames, scheme.total, dims,
    scheme.id ?? "", fps, imageSize);
}

// ── file helpers ────────────────────────────────────────────────────────────

export interface LoadOptions {
  /** Needed for interchange JSON, which carries no scheme of its own. */
  scheme?: SchemeInfo;
  /** Frame rate assumed for interchange JSON (SPC1 stores its own). */
  fps?: number;
}

/**
 * Read either an SPC1 file or an interchange JSON file.  Dispatches on the
 * magic bytes, exactly like the python loader.
 */
export function load(path: string, options: LoadOptions = {}): BoundSequence {
  const data = readFileSync(path);
  if (bytesEqual(data.subarray(0, 4), MAGIC)) {
    return parseSpc1(data);
  }
  let document: unknown;
  try {
    document = JSON.parse(
      new TextDecoder("utf-8", { fatal: true }).decode(data));
  } catch {
    throw new BadMagic(
      `${path}: neither an SPC1 stream nor interchange JSON`, 0);
  }
  if (options.scheme === undefined) {
    throw new CountMismatch(
      `${path}: interchange JSON needs an explicit scheme for validation`);
  }
  return importJson(document, options.scheme, options.fps ?? 25.0);
}

/**
 * Read the shape facts out of a scheme descriptor JSON file (for example
 * one produced by `posebench dump-scheme`).  Only the fields the reader
 * needs are validated here; full structural validation stays in the CLI.
 */
export function loadScheme(path: string): SchemeInfo {
  const doc = JSON.parse(readFileSync(path, "utf-8"));
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new PoseError(`${path}: descriptor must be a JSON object`);
  }
  const { id, total, dims } = doc as Record<string, unknown>;
  if (typeof id !== "string" || id.length === 0) {
    throw new PoseError(`${path}: id must be a non-empty string`);
  }
  if (typeof total !== "number" || !Number.isInteger(total) || total < 1) {
    throw new PoseError(`${path}: total must be a positive integer`);
  }
  if (dims !== 2 && dims !== 3) {
    throw new PoseError(`${path}: dims must be 2 or 3`);
  }
  const hasConf = (doc as Record<string, unknown>).has_confidence;
  return { id, total, dims, has_confidence: hasConf === false ? false : true };
}
