// Generated by tools/make_font.py -- do not edit by hand.
// 8x16 bitmap glyphs for ASCII 0x20-0x7E, rasterized from DejaVu Sans
// Mono 13px. One byte per row (MSB = leftmost pixel), 16 rows per glyph.

export const CELL_W = 8;
export const CELL_H = 16;
export const BASELINE = 12;
export const FIRST_CODE = 32;
export const LAST_CODE = 126;

const PACKED =
  "AAAAAAAAAAAAAAAAAAAAAAAAABgYGBgYEAAYGAAAAAAAAAAkJCQkAAAAAAAAAAAAAAASEhR/" +
  "JCT+KEhIAAAAAAAAAAA8YEA4DAJCPAAAAAAAAABgkJBmGE4LCw4AAAAAAAAAPCAgMFHIxkY6" +
  "AAAAAAAAABAQEBAAAAAAAAAAAAAACAgYEBAQEBAQGAgIAAAAACAQEAgICAgICBAQIAAAAAAA" +
  "AABAODhAAAAAAAAAAAAAAAAAEBAQfhAQEAAAAAAAAAAAAAAAAAAAABgYEBAAAAAAAAAAAAAA" +
  "PAAAAAAAAAAAAAAAAAAAAAAAGBgAAAAAAAAABgQECAgQECAgYEAAAAAAADxkRkJaQkZkPAAA" +
  "AAAAAAA4CAgICAgICD4AAAAAAAAAOEQGBAwYMGB+AAAAAAAAADhEBgQ8BAJGPAAAAAAAAAAM" +
  "HBQkJER+BAQAAAAAAAAAfEBAeAQGBkQ4AAAAAAAAABwgQFxmQkJmPAAAAAAAAAB+BAQMCAgQ" +
  "EDAAAAAAAAAAPGZGZDxmQmY8AAAAAAAAADxkRkZmPgYEOAAAAAAAAAAAABgYAAAAGBgAAAAA" +
  "AAAAAAAYGAAAABgYEBAAAAAAAAAAAhxgYBwCAAAAAAAAAAAAAAB+AAB+AAAAAAAAAAAAAABA" +
  "OAYGOEAAAAAAAAAAADwEBAwYEAAQEAAAAAAAAAAcYkKOkpCSjkAgHAAAAAAAGBg4JCRkfkLC" +
  "AAAAAAAAAHxGQkZ8RkJGfAAAAAAAAAAcImBAQEBgIhwAAAAAAAAAeERGQkJCRkR4AAAAAAAA" +
  "AH5gYGB+YGBgfgAAAAAAAAB+YGBgfmBgYGAAAAAAAAAAHGBAQE5CQmI8AAAAAAAAAEJCQkJ+" +
  "QkJCQgAAAAAAAAB+GBgYGBgYGH4AAAAAAAAAPAQEBAQEBEx4AAAAAAAAAEJESHB4SERGQgAA" +
  "AAAAAABgYGBgYGBgYH4AAAAAAAAARmZmSlpaQkJCAAAAAAAAAGJiclJSSk5GRgAAAAAAAAA8" +
  "ZEJCQkJCZDwAAAAAAAAAfGZiYmZ8YGBgAAAAAAAAADxkQkJCQkJkPAQEAAAAAAB8RkZEeERG" +
  "QkMAAAAAAAAAPGBAYDwGAkY8AAAAAAAAAP8YGBgYGBgYGAAAAAAAAABCQkJCQkJCZjwAAAAA" +
  "AAAAQkJGZCQkKBgYAAAAAAAAAIGDwlpaWmZmZAAAAAAAAABCJCQYGDgkRsIAAAAAAAAAQkYk" +
  "OBgYGBgYAAAAAAAAAH4GBAgYECBgfgAAAAAAHBAQEBAQEBAQEBAcAAAAAAAAQGAgIBAQCAgE" +
  "BAYAAAA4CAgICAgICAgICDgAAAAAAAAYPCRCAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAD/AAAA" +
  "IBAAAAAAAAAAAAAAAAAAAAAAADxEAj5GRj4AAAAAAEBAQEB8ZmJCYmZ8AAAAAAAAAAAAHCBg" +
  "YGAgHAAAAAAABgYGBj5mRkZGZj4AAAAAAAAAAAA8ZkJ+QGI8AAAAAAAOGBAQfhAQEBAQEAAA" +
  "AAAAAAAAAD5mRkZGZj4EBDgAAEBAQEB8ZEZGRkZGAAAAAAAYAAAAOBgYGBgYfgAAAAAACAAA" +
  "ADgICAgICAgIGHAAAGBgYGBmbHh4bGZiAAAAAABwEBAQEBAQEBAQDgAAAAAAAAAAAHZaUlJS" +
  "UlIAAAAAAAAAAAB8ZEZGRkZGAAAAAAAAAAAAPGRCQkJkPAAAAAAAAAAAAHxmYkJiZnxAQEAA" +
  "AAAAAAA+ZkZGRmY+AgICAAAAAAAAPjAwICAgIAAAAAAAAAAAADhkYDwERDwAAAAAAAAAEBB+" +
  "EBAQEBAeAAAAAAAAAAAARkZGRkZmPgAAAAAAAAAAAEJGJCQsGBgAAAAAAAAAAACBglpaWmYk" +
  "AAAAAAAAAAAARiQYGDgkQgAAAAAAAAAAAEJCJCQ8GBgQEGAAAAAAAAB+BAgYMCB+AAAAAAAM" +
  "GBgYEHAQGBgYGAwAAAAAEBAQEBAQEBAQEBAQEAAAAHAQEBAYDBgYEBAQcAAAAAAAAAAAAABw" +
  "DgAAAAAAAAA=";

export const GLYPHS: Uint8Array = Uint8Array.from(atob(PACKED), (c) =>
  c.charCodeAt(0),
);
