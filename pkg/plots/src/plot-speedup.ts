#!/usr/bin/env node
// Gradient-phase speedup bars from an optimizer timings CSV.

import { readFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { parsed, runCli } from "./cli.js";
import { parseTimings, speedups } from "./data.js";
import { buildSpeedup } from "./layout.js";
import { UsageError, writeFigure } from "./render.js";

const USAGE = `usage: plot-speedup --timings t.csv --out fig.png

Reads a timings CSV (scheme,threads,gradient_seconds) and draws
speedup = t(1)/t(P) bars grouped by scheme. Every scheme must include a
threads=1 baseline row. The figure is written as both PNG and SVG.
`;

runCli("plot-speedup", USAGE, () => {
  const { values } = parsed(() =>
    parseArgs({
      options: {
        timings: { type: "string" },
        out: { type: "string" },
        help: { type: "boolean", default: false },
      },
      allowPositionals: false,
    }),
  );

  if (values.help) {
    process.stdout.write(USAGE);
    return;
  }
  if (!values.timings) {
    throw new UsageError("--timings is required");
  }
  if (!values.out) {
    throw new UsageError("--out is required");
  }

  const rows = parseTimings(
    readFileSync(values.timings, "utf8"),
    values.timings,
  );
  const { model } = buildSpeedup(speedups(rows, values.timings));
  const files = writeFigure(values.out, model);
  process.stdout.write(`wrote ${files.png} and ${files.svg}\n`);
});
