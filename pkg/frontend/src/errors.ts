// Error classes mirroring the diagnostics of the python toolkit, so code on
// either side of the fence can match on the same names and message text.

export class PoseError extends Error {
  override readonly name: string = "PoseError";
}

/**
 * Base for byte-stream parsing problems.  `offset` is the position (in
 * bytes from the start of the stream) where parsing failed, when known.
 */
export class ContainerError extends PoseError {
  override readonly name: string = "ContainerError";
  readonly offset: number | null;

  constructor(message: string, offset: number | null = null) {
    super(offset === null ? message : `${message} (at byte offset ${offset})`);
    this.offset = offset;
  }
}

export class BadMagic extends ContainerError {
  override readonly name = "BadMagic";
}

export class UnsupportedVersion extends ContainerError {
  override readonly name = "UnsupportedVersion";
}

export class MalformedPayload extends ContainerError {
  override readonly name = "MalformedPayload";
}

/** Keypoint count of a sequence does not match the scheme it claims. */
export class CountMismatch extends PoseError {
  override readonly name = "CountMismatch";
}

/** The posebench CLI exited non-zero or could not be launched at all. */
export class CliError extends PoseError {
  override readonly name = "CliError";
  readonly exitCode: number | null;
  readonly stderr: string;

  constructor(message: string, exitCode: number | null = null, stderr = "") {
    super(message);
    this.exitCode = exitCode;
    this.stderr = stderr;
  }
}
