import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  PlotDataError,
  parseTimings,
  parseTrace,
  speedups,
} from "../src/data";

const fixture = (name: string): string =>
  readFileSync(fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url)), "utf8");

describe("parseTrace", () => {
  it("round-trips full-precision values", () => {
    const rows = parseTrace(fixture("trace_hamsi.csv"), "trace_hamsi.csv");
    expect(rows).toHaveLength(10);
    expect(rows[0]).toEqual({
      epoch: 1,
      seconds: 0.912,
      rmse: 3.4821990117377283,
      beta: 233.48806411890472,
    });
    expect(rows[9].epoch).toBe(10);
  });

  it("accepts scientific notation", () => {
    const rows = parseTrace(
      "epoch,seconds,rmse,beta\n1,0.5,5.6e-05,1e2\n",
      "t",
    );
    expect(rows[0].rmse).toBe(5.6e-5);
    expect(rows[0].beta).toBe(100);
  });

  it("rejects a wrong header, naming the file", () => {
    expect(() =>
      parseTrace(fixture("trace_bad_header.csv"), "trace_bad_header.csv"),
    ).toThrowError(/trace_bad_header\.csv: expected trace header/);
  });

  it("rejects a non-numeric field with its line number", () => {
    expect(() =>
      parseTrace(fixture("trace_bad_row.csv"), "trace_bad_row.csv"),
    ).toThrowError(/trace_bad_row\.csv:3: rmse must be a finite number/);
  });

  it("rejects the wrong field count", () => {
    expect(() =>
      parseTrace("epoch,seconds,rmse,beta\n1,2,3\n", "t"),
    ).toThrowError(/t:2: expected 4 fields, got 3/);
  });

  it("rejects empty files and header-only files", () => {
    expect(() => parseTrace("", "t")).toThrowError(PlotDataError);
    expect(() => parseTrace("epoch,seconds,rmse,beta\n", "t")).toThrowError(
      /no data rows/,
    );
  });

  it("rejects non-finite and blank numeric fields", () => {
    expect(() =>
      parseTrace("epoch,seconds,rmse,beta\n1,0.5,Infinity,2\n", "t"),
    ).toThrowError(PlotDataError);
    expect(() =>
      parseTrace("epoch,seconds,rmse,beta\n1,,1.5,2\n", "t"),
    ).toThrowError(/t:2: seconds/);
  });

  it("rejects non-positive and fractional epochs", () => {
    expect(() =>
      parseTrace("epoch,seconds,rmse,beta\n0,0.5,1.5,2\n", "t"),
    ).toThrowError(/epoch must be a positive integer/);
    expect(() =>
      parseTrace("epoch,seconds,rmse,beta\n1.5,0.5,1.5,2\n", "t"),
    ).toThrowError(/epoch must be a positive integer/);
  });
});

describe("parseTimings", () => {
  it("parses the schema", () => {
    const rows = parseTimings(fixture("timings_basic.csv"), "timings_basic.csv");
    expect(rows).toEqual([
      { scheme: "strata-b", threads: 1, gradientSeconds: 8 },
      { scheme: "strata-b", threads: 4, gradientSeconds: 2 },
    ]);
  });

  it("rejects a wrong header", () => {
    expect(() => parseTimings("scheme,threads\nstrata,1\n", "t")).toThrowError(
      /expected timings header/,
    );
  });

  it("rejects bad threads and non-positive times", () => {
    const header = "scheme,threads,gradient_seconds\n";
    expect(() => parseTimings(`${header}strata,0,5\n`, "t")).toThrowError(
      /threads must be a positive integer/,
    );
    expect(() => parseTimings(`${header}strata,2.5,5\n`, "t")).toThrowError(
      /threads must be a positive integer/,
    );
    expect(() => parseTimings(`${header}strata,1,0\n`, "t")).toThrowError(
      /gradient_seconds must be positive/,
    );
    expect(() => parseTimings(`${header},1,5\n`, "t")).toThrowError(
      /scheme must be non-empty/,
    );
  });
});

describe("speedups", () => {
  it("computes t(1)/t(P) per scheme", () => {
    const rows = parseTimings(fixture("timings_basic.csv"), "t");
    expect(speedups(rows, "t")).toEqual([
      { scheme: "strata-b", threads: 1, speedup: 1 },
      { scheme: "strata-b", threads: 4, speedup: 4 },
    ]);
  });

  it("requires a threads=1 baseline per scheme", () => {
    const rows = parseTimings(fixture("timings_no_baseline.csv"), "t");
    expect(() => speedups(rows, "t")).toThrowError(
      /scheme "color-b" has no threads=1 baseline/,
    );
  });

  it("averages repeated (scheme, threads) rows", () => {
    const rows = parseTimings(
      "scheme,threads,gradient_seconds\nstrata,1,8\nstrata,1,12\nstrata,4,5\n",
      "t",
    );
    expect(speedups(rows, "t")).toEqual([
      { scheme: "strata", threads: 1, speedup: 1 },
      { scheme: "strata", threads: 4, speedup: 2 },
    ]);
  });

  it("keeps scheme first-appearance order and sorts threads", () => {
    const rows = parseTimings(
      "scheme,threads,gradient_seconds\nzeta,4,2\nzeta,1,8\nalpha,1,6\n",
      "t",
    );
    expect(speedups(rows, "t").map((b) => [b.scheme, b.threads])).toEqual([
      ["zeta", 1],
      ["zeta", 4],
      ["alpha", 1],
    ]);
  });
});
