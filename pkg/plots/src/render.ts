// Output orchestration: rasterize or serialize a figure model, and write
// the figure as both PNG and SVG siblings of the requested path.

import { writeFileSync } from "node:fs";

import { FigureModel } from "./figure.js";
import { encodePng } from "./png.js";
import { Raster, hexColor } from "./raster.js";
import { toSvg } from "./svg.js";

export class UsageError extends Error {}

export function renderPng(model: FigureModel): Buffer {
  const raster = new Raster(model.width, model.height);
  for (const s of model.shapes) {
    switch (s.kind) {
      case "rect":
        raster.fillRect(
          Math.round(s.x),
          Math.round(s.y),
          Math.round(s.w),
          Math.round(s.h),
          hexColor(s.fill),
        );
        break;
      case "line":
        raster.line(
          Math.round(s.x1),
          Math.round(s.y1),
          Math.round(s.x2),
          Math.round(s.y2),
          hexColor(s.stroke),
          Math.max(1, Math.round(s.width)),
          s.dash ?? false,
        );
        break;
      case "polyline":
        raster.polyline(s.points, hexColor(s.stroke), Math.max(1, Math.round(s.width)));
        break;
      case "text":
        raster.text(
          Math.round(s.x),
          Math.round(s.y),
          s.text,
          hexColor(s.fill),
          s.anchor,
          s.size > 16 ? 2 : 1,
        );
        break;
    }
  }
  return encodePng(model.width, model.height, raster.data);
}

export { toSvg };

export interface WrittenFiles {
  png: string;
  svg: string;
}

/**
 * Write the figure as both formats: `out` names one of them and the other
 * is written next to it with the extension swapped.
 */
export function writeFigure(out: string, model: FigureModel): WrittenFiles {
  const lower = out.toLowerCase();
  if (!lower.endsWith(".png") && !lower.endsWith(".svg")) {
    throw new UsageError(`output path must end in .png or .svg, got "${out}"`);
  }
  const stem = out.slice(0, -4);
  const files = { png: `${stem}.png`, svg: `${stem}.svg` };
  writeFileSync(files.png, renderPng(model));
  writeFileSync(files.svg, toSvg(model));
  return files;
}
