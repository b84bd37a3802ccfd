import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { PlotDataError, parseTimings, parseTrace, speedups } from "../src/data";
import { TextShape } from "../src/figure";
import { buildConvergence, buildSpeedup } from "../src/layout";

const fixture = (name: string): string =>
  readFileSync(fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url)), "utf8");

const trace = (name: string) => parseTrace(fixture(name), name);

const texts = (shapes: { kind: string }[]): string[] =>
  shapes.filter((s): s is TextShape => s.kind === "text").map((s) => s.text);

describe("buildConvergence", () => {
  it("draws a single curve for a single trace", () => {
    const { model, info } = buildConvergence(
      [{ label: "hamsi", rows: trace("trace_hamsi.csv") }],
      { xAxis: "seconds", logY: false },
    );
    expect(info.curves).toHaveLength(1);
    expect(info.curves[0].label).toBe("hamsi");
    expect(model.shapes.filter((s) => s.kind === "polyline")).toHaveLength(1);
  });

  it("draws one labeled curve per trace with distinct colors", () => {
    const { model, info } = buildConvergence(
      [
        { label: "hamsi", rows: trace("trace_hamsi.csv") },
        { label: "mbgd", rows: trace("trace_mbgd.csv") },
      ],
      { xAxis: "seconds", logY: false },
    );
    expect(info.curves.map((c) => c.label)).toEqual(["hamsi", "mbgd"]);
    expect(new Set(info.curves.map((c) => c.color)).size).toBe(2);
    expect(model.shapes.filter((s) => s.kind === "polyline")).toHaveLength(2);
    const labels = texts(model.shapes);
    expect(labels).toContain("hamsi");
    expect(labels).toContain("mbgd");
  });

  it("spans exactly [1, 100] on the epoch axis of a 100-epoch trace", () => {
    const { info } = buildConvergence(
      [{ label: "run", rows: trace("trace_epoch100.csv") }],
      { xAxis: "epoch", logY: false },
    );
    expect(info.xDomain).toEqual([1, 100]);
  });

  it("starts the seconds axis at zero", () => {
    const { info } = buildConvergence(
      [{ label: "run", rows: trace("trace_hamsi.csv") }],
      { xAxis: "seconds", logY: false },
    );
    expect(info.xDomain[0]).toBe(0);
    expect(info.xDomain[1]).toBeCloseTo(8.87, 12);
  });

  it("uses powers of ten on a log y axis", () => {
    const { info } = buildConvergence(
      [{ label: "run", rows: trace("trace_hamsi.csv") }],
      { xAxis: "seconds", logY: true },
    );
    expect(info.logY).toBe(true);
    for (const t of info.yTicks) {
      expect(Math.log10(t) % 1).toBeCloseTo(0, 9);
    }
    expect(info.yDomain[0]).toBeLessThanOrEqual(0.41020185437969334);
    expect(info.yDomain[1]).toBeGreaterThanOrEqual(3.4821990117377283);
  });

  it("rejects log y when a value is zero", () => {
    const rows = [{ epoch: 1, seconds: 0.5, rmse: 0, beta: 2 }];
    expect(() =>
      buildConvergence([{ label: "z", rows }], { xAxis: "seconds", logY: true }),
    ).toThrowError(PlotDataError);
  });

  it("marks a single-sample trace instead of drawing a line", () => {
    const rows = [{ epoch: 1, seconds: 0.5, rmse: 1.5, beta: 2 }];
    const { model, info } = buildConvergence([{ label: "one", rows }], {
      xAxis: "epoch",
      logY: false,
    });
    expect(info.curves[0].points).toBe(1);
    expect(model.shapes.filter((s) => s.kind === "polyline")).toHaveLength(0);
  });

  it("requires at least one trace", () => {
    expect(() =>
      buildConvergence([], { xAxis: "seconds", logY: false }),
    ).toThrowError(PlotDataError);
  });
});

describe("buildSpeedup", () => {
  const barsOf = (name: string) =>
    speedups(parseTimings(fixture(name), name), name);

  it("puts the 4-thread bar at exactly 4.0 for t(1)=8, t(4)=2", () => {
    const { info } = buildSpeedup(barsOf("timings_basic.csv"));
    expect(info.bars).toEqual([
      { scheme: "strata-b", threads: 1, speedup: 1 },
      { scheme: "strata-b", threads: 4, speedup: 4 },
    ]);
    expect(info.yDomain[1]).toBeGreaterThanOrEqual(4);
  });

  it("draws one bar at 1.0 for a single scheme and thread count", () => {
    const { info } = buildSpeedup(barsOf("timings_single.csv"));
    expect(info.bars).toEqual([
      { scheme: "strata-b", threads: 1, speedup: 1 },
    ]);
  });

  it("draws six bars for two schemes x three thread counts", () => {
    const { model, info } = buildSpeedup(barsOf("timings_six.csv"));
    expect(info.bars).toHaveLength(6);
    expect(info.schemes).toEqual(["strata", "strata-b"]);
    // one rect per bar plus the background
    expect(model.shapes.filter((s) => s.kind === "rect")).toHaveLength(7);
    const labels = texts(model.shapes);
    expect(labels).toContain("strata");
    expect(labels).toContain("strata-b");
  });

  it("rejects an empty bar list", () => {
    expect(() => buildSpeedup([])).toThrowError(PlotDataError);
  });
});
