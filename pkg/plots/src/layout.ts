// Figure geometry. Both figure builders return the drawable shape list
// plus a structured summary (domains, curves, bars) that tests and
// callers can inspect without rasterizing anything.

import {
  BG,
  FG,
  FigureModel,
  GRID,
  MUTED,
  PALETTE,
  Shape,
  fmtTick,
  fmtValue,
} from "./figure.js";
import { NamedTrace, PlotDataError, SpeedupBar } from "./data.js";
import { linearTicks, logTicks, tickStep } from "./ticks.js";

export type XAxisKind = "seconds" | "epoch";

export interface ConvergenceOptions {
  xAxis: XAxisKind;
  logY: boolean;
}

export interface CurveInfo {
  label: string;
  color: string;
  points: number;
}

export interface ConvergenceInfo {
  curves: CurveInfo[];
  xDomain: [number, number];
  yDomain: [number, number];
  xTicks: number[];
  yTicks: number[];
  xAxis: XAxisKind;
  logY: boolean;
}

export interface SpeedupInfo {
  bars: SpeedupBar[];
  schemes: string[];
  yDomain: [number, number];
}

const WIDTH = 900;
const HEIGHT = 560;
const MARGIN = { left: 82, right: 24, top: 48, bottom: 64 };

const TICK_LEN = 5;
const SIZE_TICK = 13;
const SIZE_LABEL = 14;
const SIZE_TITLE = 16;

interface Frame {
  x0: number;
  y0: number; // top-left of the plot area
  w: number;
  h: number;
}

function frame(): Frame {
  return {
    x0: MARGIN.left,
    y0: MARGIN.top,
    w: WIDTH - MARGIN.left - MARGIN.right,
    h: HEIGHT - MARGIN.top - MARGIN.bottom,
  };
}

function baseShapes(title: string, f: Frame): Shape[] {
  return [
    { kind: "rect", x: 0, y: 0, w: WIDTH, h: HEIGHT, fill: BG },
    {
      kind: "text",
      x: WIDTH / 2,
      y: MARGIN.top - 18,
      text: title,
      fill: FG,
      size: SIZE_TITLE,
      anchor: "middle",
    },
    // left and bottom axis lines
    {
      kind: "line",
      x1: f.x0,
      y1: f.y0,
      x2: f.x0,
      y2: f.y0 + f.h,
      stroke: FG,
      width: 1,
    },
    {
      kind: "line",
      x1: f.x0,
      y1: f.y0 + f.h,
      x2: f.x0 + f.w,
      y2: f.y0 + f.h,
      stroke: FG,
      width: 1,
    },
  ];
}

function yAxis(
  shapes: Shape[],
  f: Frame,
  ticks: number[],
  step: number,
  scale: (v: number) => number,
): void {
  for (const t of ticks) {
    const y = scale(t);
    if (y < f.y0 - 0.5 || y > f.y0 + f.h + 0.5) continue;
    shapes.push(
      { kind: "line", x1: f.x0, y1: y, x2: f.x0 + f.w, y2: y, stroke: GRID, width: 1, dash: true },
      { kind: "line", x1: f.x0 - TICK_LEN, y1: y, x2: f.x0, y2: y, stroke: FG, width: 1 },
      {
        kind: "text",
        x: f.x0 - TICK_LEN - 4,
        y: y + 4,
        text: fmtTick(t, step),
        fill: FG,
        size: SIZE_TICK,
        anchor: "end",
      },
    );
  }
}

function xAxisTicks(
  shapes: Shape[],
  f: Frame,
  ticks: number[],
  step: number,
  scale: (v: number) => number,
): void {
  for (const t of ticks) {
    const x = scale(t);
    if (x < f.x0 - 0.5 || x > f.x0 + f.w + 0.5) continue;
    shapes.push(
      { kind: "line", x1: x, y1: f.y0 + f.h, x2: x, y2: f.y0 + f.h + TICK_LEN, stroke: FG, width: 1 },
      {
        kind: "text",
        x,
        y: f.y0 + f.h + TICK_LEN + 14,
        text: fmtTick(t, step),
        fill: FG,
        size: SIZE_TICK,
        anchor: "middle",
      },
    );
  }
}

function padDomain(lo: number, hi: number): [number, number] {
  if (hi > lo) return [lo, hi];
  const pad = Math.abs(lo) > 0 ? Math.abs(lo) * 0.5 : 0.5;
  return [lo - pad, lo + pad];
}

export function buildConvergence(
  traces: NamedTrace[],
  opts: ConvergenceOptions,
): { model: FigureModel; info: ConvergenceInfo } {
  if (!traces.length) {
    throw new PlotDataError("at least one trace is required");
  }
  const xOf = (r: { seconds: number; epoch: number }) =>
    opts.xAxis === "seconds" ? r.seconds : r.epoch;

  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const t of traces) {
    for (const r of t.rows) {
      xMin = Math.min(xMin, xOf(r));
      xMax = Math.max(xMax, xOf(r));
      yMin = Math.min(yMin, r.rmse);
      yMax = Math.max(yMax, r.rmse);
    }
  }

  // seconds start at zero; epochs span exactly the observed range
  const xDomain = padDomain(opts.xAxis === "seconds" ? Math.min(0, xMin) : xMin, xMax);

  let yDomain: [number, number];
  let yTicks: number[];
  let yStep: number;
  if (opts.logY) {
    if (!(yMin > 0)) {
      throw new PlotDataError("log-scale y requires strictly positive rmse values");
    }
    let lo = Math.pow(10, Math.floor(Math.log10(yMin)));
    let hi = Math.pow(10, Math.ceil(Math.log10(yMax)));
    if (lo === hi) hi *= 10;
    yDomain = [lo, hi];
    yTicks = logTicks(lo, hi);
    yStep = lo;
  } else {
    const top = yMax > 0 ? yMax : 1;
    yStep = tickStep(0, top, 5);
    const hi = Math.ceil(top / yStep - 1e-9) * yStep;
    yDomain = [0, hi];
    yTicks = linearTicks(0, hi, 5);
  }

  const f = frame();
  const sx = (v: number) =>
    f.x0 + ((v - xDomain[0]) / (xDomain[1] - xDomain[0])) * f.w;
  const sy = opts.logY
    ? (v: number) =>
        f.y0 +
        f.h -
        ((Math.log10(v) - Math.log10(yDomain[0])) /
          (Math.log10(yDomain[1]) - Math.log10(yDomain[0]))) *
          f.h
    : (v: number) =>
        f.y0 + f.h - ((v - yDomain[0]) / (yDomain[1] - yDomain[0])) * f.h;

  const title = `Training RMSE vs ${opts.xAxis}`;
  const shapes = baseShapes(title, f);

  const xStep = tickStep(xDomain[0], xDomain[1], 7);
  const xTicks = linearTicks(xDomain[0], xDomain[1], 7);
  yAxis(shapes, f, yTicks, yStep, sy);
  xAxisTicks(shapes, f, xTicks, xStep, sx);

  // axis titles
  shapes.push(
    {
      kind: "text",
      x: f.x0 + f.w / 2,
      y: HEIGHT - 18,
      text: opts.xAxis,
      fill: FG,
      size: SIZE_LABEL,
      anchor: "middle",
    },
    {
      kind: "text",
      x: 10,
      y: MARGIN.top - 18,
      text: opts.logY ? "RMSE (log)" : "RMSE",
      fill: FG,
      size: SIZE_LABEL,
      anchor: "start",
    },
  );

  const curves: CurveInfo[] = [];
  traces.forEach((t, i) => {
    const color = PALETTE[i % PALETTE.length];
    const points = t.rows.map(
      (r) => [sx(xOf(r)), sy(r.rmse)] as [number, number],
    );
    if (points.length === 1) {
      // a single sample has no line; draw a small marker instead
      const [px, py] = points[0];
      shapes.push({ kind: "rect", x: px - 3, y: py - 3, w: 6, h: 6, fill: color });
    } else {
      shapes.push({ kind: "polyline", points, stroke: color, width: 2 });
    }
    curves.push({ label: t.label, color, points: t.rows.length });
  });

  // legend, top-right inside the plot area
  const labelWidth = Math.max(...curves.map((c) => c.label.length));
  const legendW = 38 + labelWidth * 8 + 10;
  const legendH = curves.length * 20 + 8;
  const lx = f.x0 + f.w - legendW - 8;
  const ly = f.y0 + 8;
  shapes.push(
    { kind: "rect", x: lx, y: ly, w: legendW, h: legendH, fill: BG },
    { kind: "line", x1: lx, y1: ly, x2: lx + legendW, y2: ly, stroke: MUTED, width: 1 },
    { kind: "line", x1: lx, y1: ly + legendH, x2: lx + legendW, y2: ly + legendH, stroke: MUTED, width: 1 },
    { kind: "line", x1: lx, y1: ly, x2: lx, y2: ly + legendH, stroke: MUTED, width: 1 },
    { kind: "line", x1: lx + legendW, y1: ly, x2: lx + legendW, y2: ly + legendH, stroke: MUTED, width: 1 },
  );
  curves.forEach((c, i) => {
    const cy = ly + 14 + i * 20;
    shapes.push(
      { kind: "line", x1: lx + 8, y1: cy - 4, x2: lx + 32, y2: cy - 4, stroke: c.color, width: 2 },
      {
        kind: "text",
        x: lx + 38,
        y: cy,
        text: c.label,
        fill: FG,
        size: SIZE_LABEL,
        anchor: "start",
      },
    );
  });

  return {
    model: { width: WIDTH, height: HEIGHT, shapes },
    info: {
      curves,
      xDomain,
      yDomain,
      xTicks,
      yTicks,
      xAxis: opts.xAxis,
      logY: opts.logY,
    },
  };
}

export function buildSpeedup(bars: SpeedupBar[]): {
  model: FigureModel;
  info: SpeedupInfo;
} {
  if (!bars.length) {
    throw new PlotDataError("at least one timing row is required");
  }
  const schemes: string[] = [];
  for (const b of bars) {
    if (!schemes.includes(b.scheme)) schemes.push(b.scheme);
  }
  const threadCounts = [...new Set(bars.map((b) => b.threads))].sort(
    (a, b) => a - b,
  );
  const colorOf = (threads: number) =>
    PALETTE[threadCounts.indexOf(threads) % PALETTE.length];

  const top = Math.max(1, ...bars.map((b) => b.speedup));
  const yStep = tickStep(0, top, 5);
  const yHi = Math.ceil(top / yStep - 1e-9) * yStep;
  const yDomain: [number, number] = [0, yHi];

  const f = frame();
  const sy = (v: number) => f.y0 + f.h - (v / yHi) * f.h;

  const shapes = baseShapes("Gradient-phase speedup over 1 thread", f);
  yAxis(shapes, f, linearTicks(0, yHi, 5), yStep, sy);

  // reference line at 1.0 (the single-thread baseline)
  shapes.push({
    kind: "line",
    x1: f.x0,
    y1: sy(1),
    x2: f.x0 + f.w,
    y2: sy(1),
    stroke: MUTED,
    width: 1,
    dash: true,
  });

  const slotW = f.w / schemes.length;
  const barGap = 6;
  schemes.forEach((scheme, gi) => {
    const group = bars.filter((b) => b.scheme === scheme);
    const bw = Math.min(
      64,
      (slotW * 0.8 - barGap * (group.length - 1)) / group.length,
    );
    const groupW = group.length * bw + (group.length - 1) * barGap;
    const gx = f.x0 + gi * slotW + (slotW - groupW) / 2;
    group.forEach((bar, bi) => {
      const bx = gx + bi * (bw + barGap);
      const by = sy(bar.speedup);
      shapes.push(
        {
          kind: "rect",
          x: bx,
          y: by,
          w: bw,
          h: f.y0 + f.h - by,
          fill: colorOf(bar.threads),
        },
        {
          kind: "text",
          x: bx + bw / 2,
          y: by - 6,
          text: fmtValue(bar.speedup),
          fill: FG,
          size: SIZE_TICK,
          anchor: "middle",
        },
        {
          kind: "text",
          x: bx + bw / 2,
          y: f.y0 + f.h + TICK_LEN + 14,
          text: String(bar.threads),
          fill: FG,
          size: SIZE_TICK,
          anchor: "middle",
        },
      );
    });
    shapes.push({
      kind: "text",
      x: f.x0 + gi * slotW + slotW / 2,
      y: f.y0 + f.h + TICK_LEN + 34,
      text: scheme,
      fill: FG,
      size: SIZE_LABEL,
      anchor: "middle",
    });
  });

  shapes.push(
    {
      kind: "text",
      x: f.x0 + f.w / 2,
      y: HEIGHT - 14,
      text: "threads per scheme",
      fill: MUTED,
      size: SIZE_TICK,
      anchor: "middle",
    },
    {
      kind: "text",
      x: 10,
      y: MARGIN.top - 18,
      text: "speedup",
      fill: FG,
      size: SIZE_LABEL,
      anchor: "start",
    },
  );

  return {
    model: { width: WIDTH, height: HEIGHT, shapes },
    info: { bars, schemes, yDomain },
  };
}
