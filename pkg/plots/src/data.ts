// CSV ingestion for the two file contracts the optimizer emits:
// trace files ("epoch,seconds,rmse,beta") and gradient-phase timing files
// ("scheme,threads,gradient_seconds"). Parsing is deliberately strict —
// a file that does not match the schema exactly is rejected with a
// line-numbered error. Fields never contain commas, so no quoting rules.

export class PlotDataError extends Error {}

export const TRACE_HEADER = "epoch,seconds,rmse,beta";
export const TIMINGS_HEADER = "scheme,threads,gradient_seconds";

export interface TraceRow {
  epoch: number;
  seconds: number;
  rmse: number;
  beta: number;
}

export interface NamedTrace {
  label: string;
  rows: TraceRow[];
}

export interface TimingRow {
  scheme: string;
  threads: number;
  gradientSeconds: number;
}

export interface SpeedupBar {
  scheme: string;
  threads: number;
  speedup: number;
}

function splitLines(text: string, source: string): string[] {
  const lines = text.split(/\r?\n/);
  while (lines.length && lines[lines.length - 1] === "") lines.pop();
  if (!lines.length) throw new PlotDataError(`${source}: file is empty`);
  return lines;
}

function numField(raw: string, source: string, lineno: number, name: string): number {
  const v = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(v)) {
    throw new PlotDataError(
      `${source}:${lineno}: ${name} must be a finite number, got "${raw}"`,
    );
  }
  return v;
}

export function parseTrace(text: string, source: string): TraceRow[] {
  const lines = splitLines(text, source);
  if (lines[0] !== TRACE_HEADER) {
    throw new PlotDataError(
      `${source}: expected trace header "${TRACE_HEADER}", got "${lines[0]}"`,
    );
  }
  const rows: TraceRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineno = i + 1;
    const fields = lines[i].split(",");
    if (fields.length !== 4) {
      throw new PlotDataError(
        `${source}:${lineno}: expected 4 fields, got ${fields.length}`,
      );
    }
    const epoch = numField(fields[0], source, lineno, "epoch");
    if (!Number.isInteger(epoch) || epoch < 1) {
      throw new PlotDataError(
        `${source}:${lineno}: epoch must be a positive integer, got "${fields[0]}"`,
      );
    }
    rows.push({
      epoch,
      seconds: numField(fields[1], source, lineno, "seconds"),
      rmse: numField(fields[2], source, lineno, "rmse"),
      beta: numField(fields[3], source, lineno, "beta"),
    });
  }
  if (!rows.length) {
    throw new PlotDataError(`${source}: trace has no data rows`);
  }
  return rows;
}

export function parseTimings(text: string, source: string): TimingRow[] {
  const lines = splitLines(text, source);
  if (lines[0] !== TIMINGS_HEADER) {
    throw new PlotDataError(
      `${source}: expected timings header "${TIMINGS_HEADER}", got "${lines[0]}"`,
    );
  }
  const rows: TimingRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineno = i + 1;
    const fields = lines[i].split(",");
    if (fields.length !== 3) {
      throw new PlotDataError(
        `${source}:${lineno}: expected 3 fields, got ${fields.length}`,
      );
    }
    const scheme = fields[0];
    if (!scheme) {
      throw new PlotDataError(`${source}:${lineno}: scheme must be non-empty`);
    }
    const threads = numField(fields[1], source, lineno, "threads");
    if (!Number.isInteger(threads) || threads < 1) {
      throw new PlotDataError(
        `${source}:${lineno}: threads must be a positive integer, got "${fields[1]}"`,
      );
    }
    const gradientSeconds = numField(
      fields[2],
      source,
      lineno,
      "gradient_seconds",
    );
    if (!(gradientSeconds > 0)) {
      throw new PlotDataError(
        `${source}:${lineno}: gradient_seconds must be positive, got "${fields[2]}"`,
      );
    }
    rows.push({ scheme, threads, gradientSeconds });
  }
  if (!rows.length) {
    throw new PlotDataError(`${source}: timings file has no data rows`);
  }
  return rows;
}

/**
 * Speedup bars grouped by scheme: t(1) / t(P) for every thread count
 * present. Repeated (scheme, threads) rows are averaged — the optimizer
 * appends one row per run, so repetitions accumulate as extra rows.
 * Every scheme must include a threads=1 baseline.
 */
export function speedups(rows: TimingRow[], source: string): SpeedupBar[] {
  const byScheme = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    let threadMap = byScheme.get(row.scheme);
    if (!threadMap) {
      threadMap = new Map();
      byScheme.set(row.scheme, threadMap);
    }
    let samples = threadMap.get(row.threads);
    if (!samples) {
      samples = [];
      threadMap.set(row.threads, samples);
    }
    samples.push(row.gradientSeconds);
  }
  const mean = (xs: number[]) => xs.reduce((a, b) => a + b, 0) / xs.length;
  const bars: SpeedupBar[] = [];
  for (const [scheme, threadMap] of byScheme) {
    const baselineSamples = threadMap.get(1);
    if (!baselineSamples) {
      throw new PlotDataError(
        `${source}: scheme "${scheme}" has no threads=1 baseline row`,
      );
    }
    const baseline = mean(baselineSamples);
    const threadCounts = [...threadMap.keys()].sort((a, b) => a - b);
    for (const threads of threadCounts) {
      bars.push({
        scheme,
        threads,
        speedup: baseline / mean(threadMap.get(threads)!),
      });
    }
  }
  return bars;
}
