// DOM rendering. Everything displayed is derived from service payloads
// plus the route state; this module only shapes it into elements.

import { ringPosition } from "./layout.js";
import type { CandidateMove, RouteState, VertexInfo } from "./route.js";
import { currentKey, routeKeys } from "./route.js";

export interface CandidateRow {
  key: string;
  style: "pivot" | "direct";
  pivots: string[];
  songCount?: number;
}

/** Row model for a candidate; forbidden moves carry the direct/red style. */
export function candidateRow(candidate: CandidateMove): CandidateRow {
  return {
    key: candidate.key,
    style: candidate.allowed ? "pivot" : "direct",
    pivots: candidate.pivots,
    songCount: candidate.songCount,
  };
}

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 520;
const OUTER = 220;
const INNER = 130;

export function renderGraph(
  container: HTMLElement,
  vertices: Map<string, VertexInfo>,
  route: RouteState | null,
  onPick: (key: string) => void,
): void {
  container.textContent = "";
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  const center = SIZE / 2;

  const position = (key: string) => {
    const info = vertices.get(key);
    return info ? ringPosition(info, center, center, OUTER, INNER) : { x: center, y: center };
  };

  if (route) {
    const keys = routeKeys(route);
    for (let i = 0; i + 1 < keys.length; i++) {
      const a = position(keys[i]!);
      const b = position(keys[i + 1]!);
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(a.x));
      line.setAttribute("y1", String(a.y));
      line.setAttribute("x2", String(b.x));
      line.setAttribute("y2", String(b.y));
      line.setAttribute("class", "route-edge");
      svg.appendChild(line);
    }
  }

  const onRoute = new Set(route ? routeKeys(route) : []);
  const here = route ? currentKey(route) : null;
  for (const [key, info] of vertices) {
    const { x, y } = ringPosition(info, center, center, OUTER, INNER);
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", [
      "vertex",
      info.family === "maj" ? "major" : "minor",
      onRoute.has(key) ? "on-route" : "",
      key === here ? "current" : "",
    ].filter(Boolean).join(" "));
    group.addEventListener("click", () => onPick(key));
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(x));
    circle.setAttribute("cy", String(y));
    circle.setAttribute("r", "14");
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(x));
    text.setAttribute("y", String(y + 4));
    text.textContent = key.split(":")[0] ?? key;
    group.append(circle, text);
    svg.appendChild(group);
  }
  container.appendChild(svg);
}

export function renderRoute(
  container: HTMLElement,
  route: RouteState,
  onUndo: () => void,
): void {
  container.textContent = "";
  const trail = document.createElement("div");
  trail.className = "route-trail";
  const parts = [route.start, ...route.steps.map((s) => `${s.key} (via ${s.pivot})`)];
  trail.textContent = parts.join("  →  ");
  container.appendChild(trail);
  if (route.steps.length > 0) {
    const undo = document.createElement("button");
    undo.id = "undo";
    undo.textContent = "undo";
    undo.addEventListener("click", onUndo);
    container.appendChild(undo);
  }
}

export function renderCandidates(
  container: HTMLElement,
  candidates: CandidateMove[],
  overlayOn: boolean,
  onExtend: (key: string, pivot: string) => void,
): void {
  container.textContent = "";
  for (const candidate of candidates) {
    const row = candidateRow(candidate);
    const item = document.createElement("div");
    item.className = `candidate ${row.style}`;
    item.dataset.key = row.key;

    const name = document.createElement("span");
    name.className = "candidate-key";
    name.textContent = row.key;
    item.appendChild(name);

    if (overlayOn && row.songCount !== undefined) {
      const badge = document.createElement("span");
      badge.className = "count";
      badge.textContent = `${row.songCount} song${row.songCount === 1 ? "" : "s"}`;
      item.appendChild(badge);
    }

    if (row.style === "pivot") {
      const select = document.createElement("select");
      for (const pivot of row.pivots) {
        const option = document.createElement("option");
        option.value = pivot;
        option.textContent = pivot;
        select.appendChild(option);
      }
      const go = document.createElement("button");
      go.textContent = "modulate";
      go.addEventListener("click", () => onExtend(row.key, select.value));
      item.append(select, go);
    } else {
      const note = document.createElement("span");
      note.className = "direct-note";
      note.textContent = "no pivot — direct only";
      item.appendChild(note);
    }
    container.appendChild(item);
  }
}

export function renderWhatIf(
  container: HTMLElement,
  target: string | undefined,
  allKeys: string[],
  reachable: boolean | null,
  onTarget: (key: string | undefined) => void,
): void {
  container.textContent = "";
  const label = document.createElement("label");
  label.textContent = "target key: ";
  const select = document.createElement("select");
  const blank = document.createElement("option");
  blank.value = "";
  blank.textContent = "(none)";
  select.appendChild(blank);
  for (const key of allKeys) {
    const option = document.createElement("option");
    option.value = key;
    option.textContent = key;
    if (key === target) option.selected = true;
    select.appendChild(option);
  }
  select.addEventListener("change", () => onTarget(select.value || undefined));
  label.appendChild(select);
  container.appendChild(label);
  if (target && reachable !== null) {
    const verdict = document.createElement("span");
    verdict.id = "reachability";
    verdict.className = reachable ? "reachable" : "unreachable";
    verdict.textContent = reachable
      ? `${target} is reachable in ≤2 further steps`
      : `${target} is NOT reachable in ≤2 further steps`;
    container.appendChild(verdict);
  }
}

export function renderNotice(container: HTMLElement, message: string | null): void {
  container.textContent = message ?? "";
  container.classList.toggle("visible", message !== null);
}
