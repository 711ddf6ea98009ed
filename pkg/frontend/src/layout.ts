// Two-ring layout matching the published figures: major keys on the
// outer ring, minor keys on the inner ring, both in circle-of-fifths
// order (position advances a fifth, i.e. 7 semitones, per slot).

import type { VertexInfo } from "./route.js";

export interface Point {
  x: number;
  y: number;
}

/** Slot on the circle of fifths for a tonic: C at the top, G next, ... */
export function fifthsSlot(tonic: number): number {
  return (tonic * 7) % 12;
}

export function ringPosition(
  info: VertexInfo,
  cx: number,
  cy: number,
  outerRadius: number,
  innerRadius: number,
): Point {
  const radius = info.family === "maj" ? outerRadius : innerRadius;
  const angle = (fifthsSlot(info.tonic) / 12) * 2 * Math.PI - Math.PI / 2;
  return { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
}
