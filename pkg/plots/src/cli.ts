// Shared CLI glue: one error-to-exit-code policy for both commands
// (1 = input/data problem, 2 = usage problem).

import { PlotDataError } from "./data.js";
import { UsageError } from "./render.js";

/** Run an argument-parsing thunk, converting node:util parseArgs
 *  rejections (unknown flag, missing value, ...) into usage errors. */
export function parsed<T>(fn: () => T): T {
  try {
    return fn();
  } catch (err) {
    const code = (err as NodeJS.ErrnoException).code ?? "";
    if (code.startsWith("ERR_PARSE_ARGS")) {
      throw new UsageError((err as Error).message);
    }
    throw err;
  }
}

export function runCli(name: string, usage: string, body: () => void): void {
  try {
    body();
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`${name}: ${err.message}\n${usage}`);
      process.exitCode = 2;
    } else if (err instanceof PlotDataError) {
      process.stderr.write(`${name}: ${err.message}\n`);
      process.exitCode = 1;
    } else if (
      err instanceof Error &&
      typeof (err as NodeJS.ErrnoException).code === "string"
    ) {
      // filesystem errors: unreadable input, unwritable output
      process.stderr.write(`${name}: ${err.message}\n`);
      process.exitCode = 1;
    } else {
      throw err;
    }
  }
}
