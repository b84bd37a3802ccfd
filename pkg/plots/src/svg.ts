// SVG backend: serialize a figure model to standalone SVG markup.

import { FigureModel, Shape } from "./figure.js";

const FONT = "DejaVu Sans Mono, Menlo, Consolas, monospace";

function n(v: number): string {
  const r = Math.round(v * 100) / 100;
  return Object.is(r, -0) ? "0" : String(r);
}

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function shapeToSvg(s: Shape): string {
  switch (s.kind) {
    case "rect":
      return `<rect x="${n(s.x)}" y="${n(s.y)}" width="${n(s.w)}" height="${n(s.h)}" fill="${s.fill}"/>`;
    case "line": {
      const dash = s.dash ? ' stroke-dasharray="6 4"' : "";
      return `<line x1="${n(s.x1)}" y1="${n(s.y1)}" x2="${n(s.x2)}" y2="${n(s.y2)}" stroke="${s.stroke}" stroke-width="${n(s.width)}"${dash}/>`;
    }
    case "polyline": {
      const pts = s.points.map(([x, y]) => `${n(x)},${n(y)}`).join(" ");
      return `<polyline points="${pts}" fill="none" stroke="${s.stroke}" stroke-width="${n(s.width)}" stroke-linejoin="round"/>`;
    }
    case "text": {
      const anchor =
        s.anchor === "start" ? "" : ` text-anchor="${s.anchor}"`;
      return `<text x="${n(s.x)}" y="${n(s.y)}" fill="${s.fill}" font-size="${n(s.size)}" font-family="${FONT}"${anchor}>${esc(s.text)}</text>`;
    }
  }
}

export function toSvg(model: FigureModel): string {
  const body = model.shapes.map(shapeToSvg).join("\n  ");
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${model.width}" height="${model.height}" viewBox="0 0 ${model.width} ${model.height}">
  ${body}
</svg>
`;
}
