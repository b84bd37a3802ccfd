// Axis tick selection: the standard 1-2-5 scheme (steps are
// {1,2,5} x 10^k, chosen by sqrt-midpoint thresholds so roughly `count`
// ticks land inside the domain).

const E10 = Math.sqrt(50);
const E5 = Math.sqrt(10);
const E2 = Math.sqrt(2);

export function tickStep(lo: number, hi: number, count: number): number {
  const span = (hi - lo) / Math.max(1, count);
  if (!(span > 0)) return 1;
  const power = Math.pow(10, Math.floor(Math.log10(span)));
  const err = span / power;
  if (err >= E10) return power * 10;
  if (err >= E5) return power * 5;
  if (err >= E2) return power * 2;
  return power;
}

function snap(v: number, step: number): number {
  return Number((Math.round(v / step) * step).toPrecision(12));
}

export function linearTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) return [lo];
  const step = tickStep(lo, hi, count);
  const out: number[] = [];
  for (
    let v = Math.ceil(lo / step) * step;
    v <= hi + step * 1e-9;
    v += step
  ) {
    out.push(snap(v, step));
  }
  return out;
}

/** Smallest {1,2,5} x 10^k that is >= v (v > 0). */
export function niceCeil(v: number): number {
  if (!(v > 0)) return 1;
  const power = Math.pow(10, Math.floor(Math.log10(v)));
  for (const m of [1, 2, 5, 10]) {
    if (m * power >= v * (1 - 1e-12)) return m * power;
  }
  return 10 * power;
}

/** Powers of ten from lo to hi inclusive; lo and hi must be powers of ten. */
export function logTicks(lo: number, hi: number): number[] {
  const k0 = Math.round(Math.log10(lo));
  const k1 = Math.round(Math.log10(hi));
  const out: number[] = [];
  for (let k = k0; k <= k1; k++) out.push(Math.pow(10, k));
  return out;
}
