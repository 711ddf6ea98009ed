// Route state and the pure logic around it: extending and undoing a
// modulation route, classifying candidate moves, overlaying corpus
// counts, and (de)serializing the whole view into the URL fragment so a
// reload reproduces it exactly.

import type { GraphDoc, HistogramEntry, NeighborEntry } from "./types.js";

export interface RouteStep {
  key: string;
  pivot: string;
}

export interface RouteState {
  start: string;
  steps: RouteStep[];
}

export interface ViewOptions {
  target?: string;
  overlay: boolean;
}

export interface CandidateMove {
  key: string;
  /** True when the service listed this key as a neighbor (a pivot exists). */
  allowed: boolean;
  pivots: string[];
  /** Songs observed making this directed move; present with overlay data. */
  songCount?: number;
}

export class StaleChoiceError extends Error {}

export function currentKey(route: RouteState): string {
  const last = route.steps[route.steps.length - 1];
  return last ? last.key : route.start;
}

export function routeKeys(route: RouteState): string[] {
  return [route.start, ...route.steps.map((s) => s.key)];
}

/**
 * Append a chosen move. The choice must be one of the allowed candidates
 * and carry one of its pivots; anything else means the candidate list is
 * stale (e.g. the graph was reloaded) and the caller should reset.
 */
export function extendRoute(
  route: RouteState,
  candidates: CandidateMove[],
  key: string,
  pivot: string,
): RouteState {
  const candidate = candidates.find((c) => c.key === key);
  if (!candidate || !candidate.allowed) {
    throw new StaleChoiceError(`${key} is not reachable from ${currentKey(route)}`);
  }
  if (!candidate.pivots.includes(pivot)) {
    throw new StaleChoiceError(`${pivot} is not a pivot toward ${key}`);
  }
  return { start: route.start, steps: [...route.steps, { key, pivot }] };
}

export function undoRoute(route: RouteState): RouteState {
  return { start: route.start, steps: route.steps.slice(0, -1) };
}

/**
 * Every other key is a candidate; the ones the service did not list as
 * neighbors have no pivot and render in the direct/red style.
 */
export function buildCandidates(
  allKeys: string[],
  current: string,
  neighbors: NeighborEntry[],
): CandidateMove[] {
  const byKey = new Map(neighbors.map((n) => [n.key, n]));
  return allKeys
    .filter((key) => key !== current)
    .map((key) => {
      const entry = byKey.get(key);
      return entry
        ? { key, allowed: true, pivots: entry.pivots, songCount: entry.corpus_frequency }
        : { key, allowed: false, pivots: [] };
    });
}

export interface VertexInfo {
  tonic: number;
  family: "maj" | "min";
}

export function vertexIndex(graph: GraphDoc): Map<string, VertexInfo> {
  return new Map(graph.vertices.map((v) => [v.label, { tonic: v.tonic, family: v.family }]));
}

/**
 * Song count for the directed move current -> candidate, read from the
 * service histogram (rows keyed by family pair and semitone interval).
 */
export function songCountFor(
  current: string,
  candidate: string,
  vertices: Map<string, VertexInfo>,
  histogram: HistogramEntry[],
): number {
  const from = vertices.get(current);
  const to = vertices.get(candidate);
  if (!from || !to) return 0;
  const interval = (to.tonic - from.tonic + 12) % 12;
  const row = histogram.find(
    (e) => e.from === from.family && e.to === to.family && e.interval === interval,
  );
  return row ? row.songs : 0;
}

export function annotateWithCorpus(
  candidates: CandidateMove[],
  current: string,
  vertices: Map<string, VertexInfo>,
  histogram: HistogramEntry[],
): CandidateMove[] {
  return candidates.map((c) => ({
    ...c,
    songCount: songCountFor(current, c.key, vertices, histogram),
  }));
}

export function sortBySongCount(candidates: CandidateMove[]): CandidateMove[] {
  return [...candidates].sort(
    (a, b) => (b.songCount ?? 0) - (a.songCount ?? 0) || a.key.localeCompare(b.key),
  );
}

// --- URL fragment codec ----------------------------------------------------
// Key text contains ":" so steps are joined with "~" and separated by "|":
//   #route=C:maj|G:maj~G:maj|a:min~C:maj&target=Gb:maj&overlay=1

export function encodeFragment(route: RouteState | null, options: ViewOptions): string {
  const params = new URLSearchParams();
  if (route) {
    const parts = [route.start, ...route.steps.map((s) => `${s.key}~${s.pivot}`)];
    params.set("route", parts.join("|"));
  }
  if (options.target) params.set("target", options.target);
  if (options.overlay) params.set("overlay", "1");
  const text = params.toString();
  return text ? `#${text}` : "";
}

export function decodeFragment(hash: string): { route: RouteState | null; options: ViewOptions } {
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  const options: ViewOptions = {
    target: params.get("target") ?? undefined,
    overlay: params.get("overlay") === "1",
  };
  const text = params.get("route");
  if (!text) return { route: null, options };
  const [start, ...rest] = text.split("|");
  if (!start) return { route: null, options };
  const steps: RouteStep[] = [];
  for (const part of rest) {
    const [key, pivot] = part.split("~");
    if (!key || pivot === undefined) return { route: null, options };
    steps.push({ key, pivot });
  }
  return { route: { start, steps }, options };
}

/**
 * Re-validate a decoded route against live neighbor responses. Returns the
 * route when every consecutive pair is still adjacent and every chosen
 * pivot is still offered; null means the route is stale and must reset.
 */
export async function revalidateRoute(
  route: RouteState,
  neighborsOf: (key: string) => Promise<NeighborEntry[]>,
  validKeys: Set<string>,
): Promise<RouteState | null> {
  if (!validKeys.has(route.start)) return null;
  let at = route.start;
  for (const step of route.steps) {
    if (!validKeys.has(step.key)) return null;
    const entries = await neighborsOf(at);
    const entry = entries.find((e) => e.key === step.key);
    if (!entry || !entry.pivots.includes(step.pivot)) return null;
    at = step.key;
  }
  return route;
}
