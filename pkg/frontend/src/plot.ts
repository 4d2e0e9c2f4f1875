/**
 * Canvas rendering: the live membership plot and the provenance
 * colorizer. Pure drawing; no state. The provenance legend is fixed and
 * matches the gray levels the service documents.
 */
import { curveSamples, type FuzzyShape } from "./membership.js";

const CURVE_COLORS = { dark: "#3949ab", gray: "#757575", bright: "#e65100" };

export function drawMembershipPlot(canvas: HTMLCanvasElement, shape: FuzzyShape): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width, height } = canvas;
  const pad = 24;
  const plotW = width - 2 * pad;
  const plotH = height - 2 * pad;
  ctx.clearRect(0, 0, width, height);

  ctx.strokeStyle = "#bbb";
  ctx.strokeRect(pad, pad, plotW, plotH);

  const toX = (x: number) => pad + (x / 255) * plotW;
  const toY = (mu: number) => pad + (1 - mu) * plotH;

  const samples = curveSamples(shape);
  for (const key of ["dark", "gray", "bright"] as const) {
    ctx.beginPath();
    ctx.strokeStyle = CURVE_COLORS[key];
    ctx.lineWidth = 2;
    samples.forEach((s, i) => {
      const x = toX(s.x);
      const y = toY(s[key]);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  }

  // breakpoint markers at the triangle feet and peak
  ctx.fillStyle = "#222";
  ctx.font = "11px sans-serif";
  for (const value of [shape.a, shape.b, shape.c]) {
    const x = toX(value);
    ctx.beginPath();
    ctx.moveTo(x, pad + plotH);
    ctx.lineTo(x, pad + plotH + 6);
    ctx.stroke();
    ctx.fillText(String(Math.round(value)), x - 9, height - 4);
  }
}

/** Gray level in the provenance raster -> stage name (service contract). */
export const PROVENANCE_LEVELS: Record<number, string> = {
  0: "primary mask",
  51: "fuzzy black",
  102: "fuzzy white",
  153: "NAV / Moran background",
  204: "channel rule",
  255: "high-texture foreground",
};

/** Fixed legend colors used when the raster is colorized client-side. */
export const PROVENANCE_COLORS: Record<number, [number, number, number]> = {
  0: [24, 24, 24],       // primary mask
  51: [63, 81, 181],     // fuzzy black
  102: [255, 235, 59],   // fuzzy white
  153: [0, 137, 123],    // NAV / Moran background
  204: [216, 27, 96],    // channel rule
  255: [255, 143, 0],    // high-texture foreground
};

export function provenanceName(grayLevel: number): string {
  return PROVENANCE_LEVELS[grayLevel] ?? `unknown (${grayLevel})`;
}

/** Map a grayscale provenance raster (RGBA pixels) to legend colors in place. */
export function colorizeProvenance(pixels: Uint8ClampedArray): void {
  for (let i = 0; i < pixels.length; i += 4) {
    const level = pixels[i];
    const color = PROVENANCE_COLORS[level];
    if (color) {
      pixels[i] = color[0];
      pixels[i + 1] = color[1];
      pixels[i + 2] = color[2];
    }
  }
}
