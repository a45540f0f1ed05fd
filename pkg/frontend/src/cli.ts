// Thin wrapper around the posebench command-line tool.  All numeric work
// happens over there; this side only builds argv lists and reads files back.

import { spawnSync } from "node:child_process";

import { CliError } from "./errors";

export interface CliOptions {
  /**
   * Command used to invoke the CLI, as an argv prefix, e.g.
   * ["posebench"] or ["python3", "-m", "posebench.cli"].  Defaults to the
   * POSEBENCH_CLI environment variable (split on spaces) or ["posebench"].
   */
  cli?: string[];
  cwd?: string;
}

export function cliCommand(options: CliOptions = {}): string[] {
  if (options.cli && options.cli.length > 0) {
    return options.cli;
  }
  const env = process.env.POSEBENCH_CLI;
  if (env) {
    const parts = env.split(" ").filter((p) => p.length > 0);
    if (parts.length > 0) return parts;
  }
  return ["posebench"];
}

/**
 * Run one CLI command to completion and return its stdout.  Any non-zero
 * exit becomes a CliError carrying the tool's stderr, which is where the
 * primary's diagnostics (bad files, mixed schemes, ...) end up.
 */
export function runCli(args: string[], options: CliOptions = {}): string {
  const [command, ...prefix] = cliCommand(options);
  const result = spawnSync(command, [...prefix, ...args], {
    encoding: "utf-8",
    cwd: options.cwd,
    maxBuffer: 512 * 1024 * 1024,
  });
  if (result.error) {
    throw new CliError(
      `failed to launch ${command}: ${result.error.message}`);
  }
  if (result.status !== 0) {
    const detail = (result.stderr ?? "").trim();
    throw new CliError(
      `${command} ${args[0]} exited with status ${result.status}` +
      (detail ? `:\n${detail}` : ""),
      result.status,
      result.stderr ?? "");
  }
  return result.stdout ?? "";
}
