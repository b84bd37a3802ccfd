// Raster backend: draw a figure model into an RGBA pixel buffer using
// integer primitives (solid rects, Bresenham lines, bitmap-font text).

import { BASELINE, CELL_H, CELL_W, FIRST_CODE, GLYPHS, LAST_CODE } from "./font.js";

export type RGB = [number, number, number];

export function hexColor(hex: string): RGB {
  const v = parseInt(hex.slice(1), 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array; // RGBA, row-major

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, [r, g, b]: RGB): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    this.data[i] = r;
    this.data[i + 1] = g;
    this.data[i + 2] = b;
    this.data[i + 3] = 255;
  }

  get(x: number, y: number): RGB {
    const i = (y * this.width + x) * 4;
    return [this.data[i], this.data[i + 1], this.data[i + 2]];
  }

  fillRect(x: number, y: number, w: number, h: number, color: RGB): void {
    const x1 = Math.min(this.width, x + w);
    const y1 = Math.min(this.height, y + h);
    for (let py = Math.max(0, y); py < y1; py++) {
      for (let px = Math.max(0, x); px < x1; px++) {
        this.set(px, py, color);
      }
    }
  }

  /** Bresenham segment; width > 1 stamps a width x width square per step. */
  line(
    x0: number,
    y0: number,
    x1: number,
    y1: number,
    color: RGB,
    width = 1,
    dash = false,
  ): void {
    const dx = Math.abs(x1 - x0);
    const dy = -Math.abs(y1 - y0);
    const sx = x0 < x1 ? 1 : -1;
    const sy = y0 < y1 ? 1 : -1;
    let err = dx + dy;
    let x = x0;
    let y = y0;
    const off = width >> 1;
    let step = 0;
    for (;;) {
      if (!dash || step % 10 < 6) {
        if (width === 1) {
          this.set(x, y, color);
        } else {
          this.fillRect(x - off, y - off, width, width, color);
        }
      }
      if (x === x1 && y === y1) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
      step++;
    }
  }

  polyline(points: Array<[number, number]>, color: RGB, width = 1): void {
    for (let i = 1; i < points.length; i++) {
      this.line(
        Math.round(points[i - 1][0]),
        Math.round(points[i - 1][1]),
        Math.round(points[i][0]),
        Math.round(points[i][1]),
        color,
        width,
      );
    }
  }

  /** Stamp text at integer scale; (x, y) follows the SVG convention of an
   *  anchored baseline point. */
  text(
    x: number,
    y: number,
    s: string,
    color: RGB,
    anchor: "start" | "middle" | "end" = "start",
    scale = 1,
  ): void {
    const adv = CELL_W * scale;
    let cx =
      anchor === "start"
        ? x
        : anchor === "end"
          ? x - s.length * adv
          : x - Math.round((s.length * adv) / 2);
    const top = y - BASELINE * scale;
    for (const ch of s) {
      let code = ch.charCodeAt(0);
      if (code < FIRST_CODE || code > LAST_CODE) code = 0x3f; // '?'
      const base = (code - FIRST_CODE) * CELL_H;
      for (let row = 0; row < CELL_H; row++) {
        const bits = GLYPHS[base + row];
        if (!bits) continue;
        for (let col = 0; col < CELL_W; col++) {
          if (bits & (0x80 >> col)) {
            if (scale === 1) {
              this.set(cx + col, top + row, color);
            } else {
              this.fillRect(
                cx + col * scale,
                top + row * scale,
                scale,
                scale,
                color,
              );
            }
          }
        }
      }
      cx += adv;
    }
  }
}
