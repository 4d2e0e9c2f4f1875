/**
 * Client-side mirror of the server's slider resolution and membership
 * functions. Used only to draw the live plot; classification always
 * happens on the server, which remains the source of truth.
 */

export interface FuzzyShape {
  a: number;
  b: number;
  c: number;
  alpha: number;
  beta: number;
}

/** Resolve the Shift Gray / Span Gray sliders into curve breakpoints. */
export function resolveSliders(shiftGray: number, spanGray: number): FuzzyShape {
  const b = shiftGray;
  const a = b - spanGray;
  const c = b + spanGray;
  if (spanGray <= 0) {
    throw new RangeError(`span must be positive, got ${spanGray}`);
  }
  if (a < 0 || c > 255) {
    throw new RangeError(`sliders put breakpoints out of range: a=${a}, c=${c}`);
  }
  return { a, b, c, alpha: b, beta: b };
}

export function muDark(x: number, s: FuzzyShape): number {
  if (x <= s.a) return 1;
  return Math.max((s.alpha - x) / (s.alpha - s.a), 0);
}

export function muGray(x: number, s: FuzzyShape): number {
  return Math.max(Math.min((x - s.a) / (s.b - s.a), (s.c - x) / (s.c - s.b)), 0);
}

export function muBright(x: number, s: FuzzyShape): number {
  if (x >= s.c) return 1;
  return Math.max((x - s.beta) / (s.c - s.beta), 0);
}

export interface CurveSample {
  x: number;
  dark: number;
  gray: number;
  bright: number;
}

/** Sample the three curves at every integer intensity. */
export function curveSamples(s: FuzzyShape): CurveSample[] {
  const out: CurveSample[] = [];
  for (let x = 0; x <= 255; x++) {
    out.push({ x, dark: muDark(x, s), gray: muGray(x, s), bright: muBright(x, s) });
  }
  return out;
}

/** The x positions where the gray triangle meets the axis and its peak. */
export function triangleGeometry(s: FuzzyShape): { feet: [number, number]; peak: number } {
  return { feet: [s.a, s.c], peak: s.b };
}
