// Wiring: one piece of state (route + view options), re-rendered after
// every service response; the URL fragment always encodes enough to
// rebuild the identical view on reload.

import { ApiClient } from "./api.js";
import {
  annotateWithCorpus,
  buildCandidates,
  currentKey,
  decodeFragment,
  encodeFragment,
  extendRoute,
  revalidateRoute,
  sortBySongCount,
  StaleChoiceError,
  undoRoute,
  vertexIndex,
  type CandidateMove,
  type RouteState,
  type ViewOptions,
} from "./route.js";
import {
  renderCandidates,
  renderGraph,
  renderNotice,
  renderRoute,
  renderWhatIf,
} from "./view.js";

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "http://127.0.0.1:8000";
}

function element(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found;
}

async function start(): Promise<void> {
  const api = new ApiClient(apiBase());
  const graphDoc = await api.graph();
  const vertices = vertexIndex(graphDoc);
  const allKeys = graphDoc.vertices.map((v) => v.label);
  const stats = await api.corpusStats();

  let route: RouteState | null = null;
  let options: ViewOptions = { overlay: false };
  let notice: string | null = null;

  const decoded = decodeFragment(window.location.hash);
  options = decoded.options;
  if (decoded.route) {
    const valid = await revalidateRoute(
      decoded.route,
      async (key) => (await api.neighbors(key)).neighbors,
      new Set(allKeys),
    );
    if (valid) {
      route = valid;
    } else {
      notice = "saved route no longer matches the loaded graph — route reset";
    }
  }

  const overlayToggle = element("overlay-toggle") as HTMLInputElement;
  if (stats === null) {
    overlayToggle.disabled = true;
    element("overlay-hint").textContent =
      "corpus overlay unavailable: the service has no corpus snapshot";
    options = { ...options, overlay: false };
  }

  async function candidatesFor(key: string): Promise<CandidateMove[]> {
    const neighbors = (await api.neighbors(key)).neighbors;
    let candidates = buildCandidates(allKeys, key, neighbors);
    if (options.overlay && stats) {
      candidates = sortBySongCount(
        annotateWithCorpus(candidates, key, vertices, stats.histogram),
      );
    }
    return candidates;
  }

  async function redraw(): Promise<void> {
    window.history.replaceState(null, "", window.location.pathname + window.location.search + encodeFragment(route, options));
    renderNotice(element("notice"), notice);
    overlayToggle.checked = options.overlay;
    renderGraph(element("graph"), vertices, route, (key) => {
      if (!route) {
        route = { start: key, steps: [] };
        notice = null;
        void redraw();
      }
    });

    const routePanel = element("route");
    const candidatesPanel = element("candidates");
    if (!route) {
      routePanel.textContent = "click a key in the graph to start a route";
      candidatesPanel.textContent = "";
      renderWhatIf(element("whatif"), options.target, allKeys, null, onTarget);
      return;
    }

    renderRoute(routePanel, route, () => {
      route = route && undoRoute(route);
      void redraw();
    });

    const here = currentKey(route);
    const candidates = await candidatesFor(here);
    renderCandidates(candidatesPanel, candidates, options.overlay && stats !== null, (key, pivot) => {
      try {
        route = route && extendRoute(route, candidates, key, pivot);
        notice = null;
      } catch (error) {
        if (error instanceof StaleChoiceError) {
          route = null;
          notice = "that move is no longer available — route reset";
        } else {
          throw error;
        }
      }
      void redraw();
    });

    let reachable: boolean | null = null;
    if (options.target && options.target !== here) {
      const oneStep = await api.walks(here, options.target, 1);
      reachable = oneStep.count > 0 || (await api.walks(here, options.target, 2)).count > 0;
    } else if (options.target === here) {
      reachable = true;
    }
    renderWhatIf(element("whatif"), options.target, allKeys, reachable, onTarget);
  }

  function onTarget(key: string | undefined): void {
    options = { ...options, target: key };
    void redraw();
  }

  overlayToggle.addEventListener("change", () => {
    options = { ...options, overlay: overlayToggle.checked };
    void redraw();
  });

  element("reset").addEventListener("click", () => {
    route = null;
    notice = null;
    void redraw();
  });

  await redraw();
}

start().catch((error) => {
  element("notice").textContent = `failed to reach the modugraph service: ${error}`;
  element("notice").classList.add("visible");
});
