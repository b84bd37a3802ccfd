import { inflateSync } from "node:zlib";

import { describe, expect, it } from "vitest";

import { PNG_SIGNATURE, encodePng } from "../src/png";
import { Raster, hexColor } from "../src/raster";

/** Minimal chunk walk of our own output. */
function chunks(png: Buffer): Map<string, Buffer> {
  expect(png.subarray(0, 8).equals(PNG_SIGNATURE)).toBe(true);
  const out = new Map<string, Buffer>();
  let off = 8;
  while (off < png.length) {
    const len = png.readUInt32BE(off);
    const type = png.subarray(off + 4, off + 8).toString("latin1");
    out.set(type, png.subarray(off + 8, off + 8 + len));
    off += 12 + len;
  }
  return out;
}

describe("encodePng", () => {
  it("emits a valid signature, header, and trailer", () => {
    const r = new Raster(20, 10);
    const png = encodePng(20, 10, r.data);
    const c = chunks(png);
    const ihdr = c.get("IHDR")!;
    expect(ihdr.readUInt32BE(0)).toBe(20);
    expect(ihdr.readUInt32BE(4)).toBe(10);
    expect(ihdr[8]).toBe(8); // bit depth
    expect(ihdr[9]).toBe(6); // RGBA
    expect(c.has("IDAT")).toBe(true);
    expect(c.has("IEND")).toBe(true);
  });

  it("round-trips pixels through the IDAT stream", () => {
    const r = new Raster(4, 3);
    r.fillRect(1, 1, 2, 1, [10, 20, 30]);
    const png = encodePng(4, 3, r.data);
    const raw = inflateSync(chunks(png).get("IDAT")!);
    expect(raw.length).toBe(3 * (1 + 4 * 4));
    expect(raw[0]).toBe(0); // filter byte of row 0
    const row1 = 1 * (1 + 16) + 1; // skip filter byte
    expect([...raw.subarray(row1 + 4, row1 + 8)]).toEqual([10, 20, 30, 255]);
    expect([...raw.subarray(row1, row1 + 4)]).toEqual([255, 255, 255, 255]);
  });

  it("is deterministic", () => {
    const draw = () => {
      const r = new Raster(64, 48);
      r.fillRect(4, 4, 20, 10, hexColor("#1f77b4"));
      r.line(0, 0, 63, 47, [0, 0, 0], 2);
      r.text(6, 30, "abc 123", [20, 20, 20]);
      return encodePng(64, 48, r.data);
    };
    expect(draw().equals(draw())).toBe(true);
  });

  it("rejects a wrong-sized buffer", () => {
    expect(() => encodePng(4, 4, new Uint8Array(3))).toThrowError(/expected 64/);
  });
});

describe("Raster", () => {
  it("starts white and writes pixels in bounds only", () => {
    const r = new Raster(8, 8);
    expect(r.get(0, 0)).toEqual([255, 255, 255]);
    r.set(2, 3, [1, 2, 3]);
    expect(r.get(2, 3)).toEqual([1, 2, 3]);
    // out-of-bounds drawing must be a no-op, not an error
    r.set(-1, 0, [0, 0, 0]);
    r.set(8, 8, [0, 0, 0]);
    r.fillRect(-5, -5, 100, 100, [9, 9, 9]);
    expect(r.get(7, 7)).toEqual([9, 9, 9]);
  });

  it("draws line endpoints", () => {
    const r = new Raster(10, 10);
    r.line(1, 1, 8, 6, [0, 0, 0]);
    expect(r.get(1, 1)).toEqual([0, 0, 0]);
    expect(r.get(8, 6)).toEqual([0, 0, 0]);
  });

  it("stamps visible glyphs", () => {
    const r = new Raster(40, 20);
    r.text(2, 14, "A", [0, 0, 0]);
    let dark = 0;
    for (let y = 0; y < 20; y++) {
      for (let x = 0; x < 40; x++) {
        if (r.get(x, y)[0] === 0) dark++;
      }
    }
    expect(dark).toBeGreaterThan(5);
  });

  it("anchors text at middle and end", () => {
    const right = new Raster(80, 20);
    right.text(78, 14, "xy", [0, 0, 0], "end");
    let rightmostDark = -1;
    for (let x = 0; x < 80; x++) {
      for (let y = 0; y < 20; y++) {
        if (right.get(x, y)[0] === 0) rightmostDark = Math.max(rightmostDark, x);
      }
    }
    expect(rightmostDark).toBeGreaterThan(60);
    expect(rightmostDark).toBeLessThanOrEqual(78);
  });

  it("parses hex colors", () => {
    expect(hexColor("#ff8000")).toEqual([255, 128, 0]);
    expect(hexColor("#000000")).toEqual([0, 0, 0]);
  });
});
