#!/usr/bin/env node
// Convergence curves (RMSE over time or epochs) from optimizer trace CSVs.

import { readFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { parsed, runCli } from "./cli.js";
import { NamedTrace, parseTrace } from "./data.js";
import { XAxisKind, buildConvergence } from "./layout.js";
import { UsageError, writeFigure } from "./render.js";

const USAGE = `usage: plot-convergence --trace label=path [--trace label=path ...]
                        --out fig.png [--x seconds|epoch] [--log-y]

Reads one optimizer trace CSV (epoch,seconds,rmse,beta) per --trace and
draws one labeled curve per file. The figure is written as both PNG and
SVG next to each other.
`;

runCli("plot-convergence", USAGE, () => {
  const { values } = parsed(() =>
    parseArgs({
      options: {
        trace: { type: "string", multiple: true },
        out: { type: "string" },
        x: { type: "string", default: "seconds" },
        "log-y": { type: "boolean", default: false },
        help: { type: "boolean", default: false },
      },
      allowPositionals: false,
    }),
  );

  if (values.help) {
    process.stdout.write(USAGE);
    return;
  }
  const traceArgs = values.trace ?? [];
  if (!traceArgs.length) {
    throw new UsageError("at least one --trace label=path is required");
  }
  if (!values.out) {
    throw new UsageError("--out is required");
  }
  if (values.x !== "seconds" && values.x !== "epoch") {
    throw new UsageError(`--x must be "seconds" or "epoch", got "${values.x}"`);
  }

  const traces: NamedTrace[] = traceArgs.map((arg) => {
    const sep = arg.indexOf("=");
    if (sep < 1 || sep === arg.length - 1) {
      throw new UsageError(`--trace expects label=path, got "${arg}"`);
    }
    const label = arg.slice(0, sep);
    const path = arg.slice(sep + 1);
    return { label, rows: parseTrace(readFileSync(path, "utf8"), path) };
  });
  const seen = new Set<string>();
  for (const t of traces) {
    if (seen.has(t.label)) {
      throw new UsageError(`duplicate trace label "${t.label}"`);
    }
    seen.add(t.label);
  }

  const { model } = buildConvergence(traces, {
    xAxis: values.x as XAxisKind,
    logY: values["log-y"],
  });
  const files = writeFigure(values.out, model);
  process.stdout.write(`wrote ${files.png} and ${files.svg}\n`);
});
