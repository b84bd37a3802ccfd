#!/usr/bin/env python3
"""Regenerate src/font.ts: an 8x16 bitmap of printable ASCII.

Rasterizes DejaVu Sans Mono (bundled with matplotlib; Bitstream Vera
license permits embedding) at 13 px into fixed 8x16 cells, one byte per
row, packed glyph-major and emitted as base64. Run from the package root:

    python3 tools/make_font.py
"""
import base64
import pathlib

from matplotlib import font_manager
from PIL import Image, ImageDraw, ImageFont

CELL_W, CELL_H, BASELINE = 8, 16, 12
FIRST, LAST = 0x20, 0x7E

path = font_manager.findfont("DejaVu Sans Mono")
font = ImageFont.truetype(path, 13)

packed = bytearray()
for code in range(FIRST, LAST + 1):
    img = Image.new("L", (CELL_W, CELL_H), 0)
    draw = ImageDraw.Draw(img)
    draw.text((0, BASELINE), chr(code), font=font, fill=255, anchor="ls")
    px = img.load()
    for y in range(CELL_H):
        row = 0
        for x in range(CELL_W):
            if px[x, y] >= 128:
                row |= 0x80 >> x
        packed.append(row)

b64 = base64.b64encode(bytes(packed)).decode()
lines = [b64[i:i + 72] for i in range(0, len(b64), 72)]
body = " +\n  ".join(f'"{chunk}"' for chunk in lines)

out = pathlib.Path(__file__).resolve().parent.parent / "src" / "font.ts"
out.write_text(f"""// Generated by tools/make_font.py -- do not edit by hand.
// 8x16 bitmap glyphs for ASCII 0x20-0x7E, rasterized from DejaVu Sans
// Mono 13px. One byte per row (MSB = leftmost pixel), 16 rows per glyph.

export const CELL_W = {CELL_W};
export const CELL_H = {CELL_H};
export const BASELINE = {BASELINE};
export const FIRST_CODE = {FIRST};
export const LAST_CODE = {LAST};

const PACKED =
  {body};

export const GLYPHS: Uint8Array = Uint8Array.from(atob(PACKED), (c) =>
  c.charCodeAt(0),
);
""")
print(f"wrote {out} ({len(packed)} glyph bytes)")
