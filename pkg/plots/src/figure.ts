// Backend-neutral figure description: layout produces a list of shapes in
// pixel coordinates, and each output backend (SVG markup, PNG raster)
// draws the same list.

export interface RectShape {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: string;
}

export interface LineShape {
  kind: "line";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  stroke: string;
  width: number;
  dash?: boolean;
}

export interface PolylineShape {
  kind: "polyline";
  points: Array<[number, number]>;
  stroke: string;
  width: number;
}

export interface TextShape {
  kind: "text";
  x: number;
  y: number; // baseline
  text: string;
  fill: string;
  size: number;
  anchor: "start" | "middle" | "end";
}

export type Shape = RectShape | LineShape | PolylineShape | TextShape;

export interface FigureModel {
  width: number;
  height: number;
  shapes: Shape[];
}

export const PALETTE = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#7f7f7f",
  "#bcbd22",
  "#17becf",
];

export const BG = "#ffffff";
export const FG = "#000000";
export const GRID = "#cccccc";
export const MUTED = "#555555";

/** Tick label for `v` given the tick step that produced it. */
export function fmtTick(v: number, step: number): string {
  if (v === 0) return "0";
  const av = Math.abs(v);
  if (av >= 1e6 || av < 1e-4) {
    return v
      .toExponential(2)
      .replace(/\.?0+e/, "e")
      .replace("e+", "e");
  }
  const dec = Math.min(6, Math.max(0, -Math.floor(Math.log10(step))));
  let s = v.toFixed(dec);
  if (s.includes(".")) {
    s = s.replace(/0+$/, "").replace(/\.$/, "");
  }
  return s;
}

/** Short label for an arbitrary value (bar annotations). */
export function fmtValue(v: number): string {
  if (!Number.isFinite(v)) return String(v);
  if (v === 0) return "0";
  const av = Math.abs(v);
  if (av >= 1e6 || av < 1e-3) {
    return v
      .toExponential(2)
      .replace(/\.?0+e/, "e")
      .replace("e+", "e");
  }
  let s = v.toFixed(2);
  if (s.includes(".")) {
    s = s.replace(/0+$/, "").replace(/\.$/, "");
  }
  return s;
}
