"""Read-only HTTP/JSON API over one pivot graph and an optional corpus.

The graph is fixed at startup; the corpus snapshot is the single
mutable slot and is replaced atomically on upload (an analyzed snapshot
is built off to the side, then published with one attribute write), so
readers always see a complete old or new snapshot. All endpoints are
pure functions of (graph, snapshot, query).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import analysis
from .corpus import (
    CorpusError,
    ModulationClass,
    ModulationRecord,
    class_histogram,
    class_of,
    corpus_stats,
    load_corpus,
)
from .graph import PivotGraph, graph_to_json, preset_graph
from .pitch import PitchError, format_key, format_triads, parse_key

MAX_WALK_STEPS = 4


@dataclass(frozen=True)
class CorpusSnapshot:
    """Immutable analyzed view of one uploaded corpus."""

    records: tuple[ModulationRecord, ...]
    histogram: dict[ModulationClass, int]
    stats: dict


def _snapshot(records: Iterable[ModulationRecord]) -> CorpusSnapshot:
    records = tuple(records)
    return CorpusSnapshot(records, class_histogram(records), corpus_stats(records))


def _error(status: int, error: str, detail: str, line: Optional[int] = None) -> JSONResponse:
    body: dict = {"error": error, "detail": detail}
    if line is not None:
        body["line"] = line
    return JSONResponse(status_code=status, content=body)


def create_app(
    graph: Optional[PivotGraph] = None,
    records: Optional[Iterable[ModulationRecord]] = None,
) -> FastAPI:
    """Build the API over a graph (default combined24) and optional corpus."""
    app = FastAPI(title="modugraph", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.graph = graph if graph is not None else preset_graph("combined24")
    app.state.snapshot = _snapshot(records) if records is not None else None

    def resolve(key_text: str) -> int:
        try:
            key = parse_key(key_text)
        except PitchError as exc:
            raise _BadKey(str(exc)) from None
        try:
            return app.state.graph.index_of(key)
        except KeyError as exc:
            raise _UnknownVertex(str(exc.args[0])) from None

    @app.exception_handler(_BadKey)
    async def _bad_key_handler(request: Request, exc: "_BadKey"):
        return _error(400, "bad key", str(exc))

    @app.exception_handler(_UnknownVertex)
    async def _unknown_vertex_handler(request: Request, exc: "_UnknownVertex"):
        return _error(404, "unknown vertex", str(exc))

    @app.get("/api/v1/graph")
    def get_graph():
        return graph_to_json(app.state.graph)

    @app.get("/api/v1/neighbors")
    def get_neighbors(key: str):
        g: PivotGraph = app.state.graph
        i = resolve(key)
        snapshot: Optional[CorpusSnapshot] = app.state.snapshot
        here = g.vertices[i].label
        entries = []
        for j in sorted(g.adjacency[i]):
            there = g.vertices[j].label
            entry = {
                "key": format_key(there),
                "pivots": format_triads(g.edge_pivots(i, j)),
            }
            if snapshot is not None:
                entry["corpus_frequency"] = snapshot.histogram.get(class_of(here, there), 0)
            entries.append(entry)
        return {"key": format_key(here), "neighbors": entries}

    @app.get("/api/v1/walks")
    def get_walks(
        from_key: str = Query(alias="from"),
        to_key: str = Query(alias="to"),
        steps: int = 1,
        no_backtrack: bool = False,
    ):
        if not 1 <= steps <= MAX_WALK_STEPS:
            return _error(400, "bad steps", f"steps must be between 1 and {MAX_WALK_STEPS}")
        g: PivotGraph = app.state.graph
        start, end = resolve(from_key), resolve(to_key)
        labels = [format_key(f.label) for f in g.vertices]
        walks = analysis.walks(g, start, end, steps, no_backtrack=no_backtrack)
        items = []
        for w in walks:
            items.append(
                {
                    "keys": [labels[v] for v in w.vertices],
                    "pivot_options": [
                        format_triads(g.edge_pivots(w.vertices[k], w.vertices[k + 1]))
                        for k in range(len(w.vertices) - 1)
                    ],
                }
            )
        return {"count": len(items), "walks": items}

    @app.post("/api/v1/corpus")
    async def post_corpus(request: Request):
        body = (await request.body()).decode("utf-8")
        try:
            records = load_corpus(body)
        except CorpusError as exc:
            return _error(422, "bad corpus", exc.detail, exc.line)
        snapshot = _snapshot(records)
        app.state.snapshot = snapshot  # atomic publish
        stats = snapshot.stats
        return {
            "songs": stats["songs"],
            "records": stats["records"],
            "distinct_classes": stats["distinct_classes"],
        }

    @app.get("/api/v1/corpus/stats")
    def get_stats():
        snapshot: Optional[CorpusSnapshot] = app.state.snapshot
        if snapshot is None:
            return _error(404, "no corpus", "no corpus snapshot loaded")
        return snapshot.stats

    return app


class _BadKey(Exception):
    pass


class _UnknownVertex(Exception):
    pass
