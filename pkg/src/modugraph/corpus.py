"""Observed song modulations: ingest, directed graph, classes, statistics.

Records arrive as annotated CSV rows (one key change per row). The
module aggregates them into the 24-vertex directed modulation graph
with pivot/direct edge typing, groups key changes into transposition
equivalence classes, histograms class usage by song, and reduces each
song to a canonical directed graph so songs with the same modulation
shape collapse together.
"""

from __future__ import annotations

import csv
import io
import warnings
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import IO, Iterable, Optional, Union

from .graph import ScaleFamily, pivots, preset, vertex_name
from .pitch import (
    SEMITONES,
    KeyFamily,
    KeyLabel,
    PitchError,
    Triad,
    format_key,
    format_triad,
    parse_key,
    parse_triad,
)

CSV_HEADER = ("song_id", "title", "from_key", "to_key", "mechanism", "pivot")

_FAMILY_CODE = {KeyFamily.MAJOR: "M", KeyFamily.MINOR: "m"}


class Mechanism(Enum):
    PIVOT = "pivot"
    DIRECT = "direct"
    TRANSITIONAL = "transitional"


class CorpusError(ValueError):
    """Malformed corpus data; carries the offending 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
        self.detail = message


class CorpusLintWarning(UserWarning):
    """A record is suspicious (e.g. its pivot is not shared by both keys)."""


@dataclass(frozen=True)
class ModulationRecord:
    """One observed key change in one song."""

    song_id: str
    title: str
    from_key: KeyLabel
    to_key: KeyLabel
    mechanism: Mechanism
    pivot: Optional[Triad] = None


@dataclass(frozen=True)
class ModulationClass:
    """Equivalence class of key changes under common transposition."""

    from_family: KeyFamily
    to_family: KeyFamily
    interval: int

    @property
    def display(self) -> str:
        src = f"{_FAMILY_CODE[self.from_family]}_i"
        dst = _FAMILY_CODE[self.to_family] + ("_i" if self.interval == 0 else f"_i+{self.interval}")
        return f"{src} -> {dst}"


def class_of(from_key: KeyLabel, to_key: KeyLabel) -> ModulationClass:
    """The transposition class of a key change; errors on identical keys."""
    if from_key == to_key:
        raise ValueError(f"{format_key(from_key)} -> itself is not a modulation")
    return ModulationClass(
        from_key.family, to_key.family, (to_key.tonic - from_key.tonic) % SEMITONES
    )


def _family_index() -> dict[KeyLabel, ScaleFamily]:
    return {f.label: f for f in preset("combined24")}


def load_corpus(source: Union[str, bytes, IO[str]]) -> list[ModulationRecord]:
    """Parse a modulation CSV into deduplicated records.

    The header must be exactly ``song_id,title,from_key,to_key,mechanism,pivot``.
    A pivot triad must be present exactly when the mechanism is
    ``pivot``. Repeats of the same (song, from, to, mechanism) collapse
    to the first occurrence. A pivot that the two key families do not
    actually share raises a :class:`CorpusLintWarning`, not an error.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise CorpusError("empty input, expected a CSV header", line=1) from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise CorpusError(
            f"bad header {','.join(header)!r}, expected {','.join(CSV_HEADER)!r}", line=1
        )

    families = _family_index()
    records: list[ModulationRecord] = []
    seen: set[tuple[str, KeyLabel, KeyLabel, Mechanism]] = set()
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(CSV_HEADER):
            raise CorpusError(f"expected {len(CSV_HEADER)} fields, got {len(row)}", line)
        song_id, title, from_text, to_text, mech_text, pivot_text = (f.strip() for f in row)
        try:
            from_key = parse_key(from_text)
            to_key = parse_key(to_text)
        except PitchError as exc:
            raise CorpusError(str(exc), line) from None
        try:
            mechanism = Mechanism(mech_text.lower())
        except ValueError:
            raise CorpusError(f"unknown mechanism {mech_text!r}", line) from None
        if from_key == to_key:
            raise CorpusError(f"{from_text} -> {to_text} does not change key", line)
        pivot = None
        if mechanism is Mechanism.PIVOT:
            if not pivot_text:
                raise CorpusError("pivot mechanism requires a pivot triad", line)
            try:
                pivot = parse_triad(pivot_text)
            except PitchError as exc:
                raise CorpusError(str(exc), line) from None
            if pivot not in pivots(families[from_key], families[to_key]):
                warnings.warn(
                    f"line {line}: pivot {format_triad(pivot)} is not shared by "
                    f"{format_key(from_key)} and {format_key(to_key)}",
                    CorpusLintWarning,
                    stacklevel=2,
                )
        elif pivot_text:
            raise CorpusError(f"{mech_text} record must not carry a pivot ({pivot_text!r})", line)
        dedup_key = (song_id, from_key, to_key, mechanism)
        if dedup_key in seen:
            continue
        seen.add(dedup_key)
        records.append(ModulationRecord(song_id, title, from_key, to_key, mechanism, pivot))
    return records


def fixture_corpus() -> list[ModulationRecord]:
    """The bundled fixture of song modulations (see data/beatles_fixture.csv)."""
    text = resources.files("modugraph.data").joinpath("beatles_fixture.csv").read_text("utf-8")
    return load_corpus(text)


# ---------------------------------------------------------------------------
# directed observed-modulation graph


@dataclass(frozen=True)
class EdgeFlags:
    observed_with_pivot: bool
    observed_direct: bool
    theory_permits_pivot: bool


@dataclass(frozen=True, eq=False)
class DirectedModulationGraph:
    """Observed key changes over the 24 combined-preset vertices."""

    vertices: tuple[KeyLabel, ...]
    edges: dict[tuple[KeyLabel, KeyLabel], EdgeFlags]


def theory_permits_pivot(from_key: KeyLabel, to_key: KeyLabel) -> bool:
    families = _family_index()
    return bool(pivots(families[from_key], families[to_key]))


def build_directed_graph(records: Iterable[ModulationRecord]) -> DirectedModulationGraph:
    """Aggregate per-(from, to) observation flags across all songs.

    Transitional records count as direct for edge typing: both reach the
    new key without a shared chord.
    """
    observed: dict[tuple[KeyLabel, KeyLabel], set[Mechanism]] = defaultdict(set)
    for r in records:
        observed[(r.from_key, r.to_key)].add(r.mechanism)
    edges = {}
    for (from_key, to_key), mechanisms in sorted(
        observed.items(), key=lambda kv: (format_key(kv[0][0]), format_key(kv[0][1]))
    ):
        edges[(from_key, to_key)] = EdgeFlags(
            observed_with_pivot=Mechanism.PIVOT in mechanisms,
            observed_direct=bool(mechanisms - {Mechanism.PIVOT}),
            theory_permits_pivot=theory_permits_pivot(from_key, to_key),
        )
    vertices = tuple(f.label for f in preset("combined24"))
    return DirectedModulationGraph(vertices, edges)


def degree_report(graph: DirectedModulationGraph) -> dict:
    """Per-vertex in/out degrees, isolated vertices, and edge-type totals."""
    in_deg = {v: 0 for v in graph.vertices}
    out_deg = {v: 0 for v in graph.vertices}
    pivot_only = direct_only = both = 0
    for (from_key, to_key), flags in graph.edges.items():
        out_deg[from_key] += 1
        in_deg[to_key] += 1
        if flags.observed_with_pivot and flags.observed_direct:
            both += 1
        elif flags.observed_with_pivot:
            pivot_only += 1
        else:
            direct_only += 1
    isolated = [v for v in graph.vertices if in_deg[v] == 0 and out_deg[v] == 0]
    return {
        "degrees": {
            format_key(v): {"in": in_deg[v], "out": out_deg[v]} for v in graph.vertices
        },
        "isolated": [format_key(v) for v in isolated],
        "totals": {
            "edges": len(graph.edges),
            "pivot_only": pivot_only,
            "direct_only": direct_only,
            "both": both,
        },
    }


def class_histogram(records: Iterable[ModulationRecord]) -> dict[ModulationClass, int]:
    """Number of distinct songs that exhibit each modulation class."""
    songs_by_class: dict[ModulationClass, set[str]] = defaultdict(set)
    for r in records:
        songs_by_class[class_of(r.from_key, r.to_key)].add(r.song_id)
    return {cls: len(songs) for cls, songs in songs_by_class.items()}


# ---------------------------------------------------------------------------
# per-song canonical graphs

# A canonical edge is (from_code, from_offset, to_code, to_offset) with
# "M" < "m", so plain tuple order implements the majors-first rule.
CanonicalEdge = tuple[str, int, str, int]


def _encode_edge(from_key: KeyLabel, to_key: KeyLabel) -> CanonicalEdge:
    return (
        _FAMILY_CODE[from_key.family],
        from_key.tonic,
        _FAMILY_CODE[to_key.family],
        to_key.tonic,
    )


def _translate(edges: Iterable[CanonicalEdge], k: int) -> tuple[CanonicalEdge, ...]:
    return tuple(
        sorted((fc, (fo + k) % SEMITONES, tc, (to + k) % SEMITONES) for fc, fo, tc, to in edges)
    )


def canonicalize_edges(edges: Iterable[CanonicalEdge]) -> tuple[CanonicalEdge, ...]:
    """Lexicographically least translate of a directed edge set."""
    edges = tuple(edges)
    return min(_translate(edges, k) for k in range(SEMITONES))


def contains_up_to_transposition(
    container: Iterable[CanonicalEdge], contained: Iterable[CanonicalEdge]
) -> bool:
    """Whether some translate of ``container`` has ``contained`` as a subset."""
    target = frozenset(canonicalize_edges(contained))
    container = tuple(container)
    return any(target <= frozenset(_translate(container, k)) for k in range(SEMITONES))


@dataclass(frozen=True)
class SongGraph:
    """A canonical per-song modulation graph and the songs that share it."""

    song_ids: tuple[str, ...]
    canonical_edges: tuple[CanonicalEdge, ...]


def song_graphs(records: Iterable[ModulationRecord]) -> tuple[list[SongGraph], int]:
    """Canonical directed graph per song, grouped; returns (groups, unique count)."""
    edges_by_song: dict[str, set[CanonicalEdge]] = defaultdict(set)
    for r in records:
        edges_by_song[r.song_id].add(_encode_edge(r.from_key, r.to_key))
    groups: dict[tuple[CanonicalEdge, ...], list[str]] = defaultdict(list)
    for song_id in sorted(edges_by_song):
        groups[canonicalize_edges(edges_by_song[song_id])].append(song_id)
    result = [
        SongGraph(tuple(sorted(ids)), canonical) for canonical, ids in sorted(groups.items())
    ]
    return result, len(result)


# ---------------------------------------------------------------------------
# reports and export


def corpus_stats(records: Iterable[ModulationRecord]) -> dict:
    """JSON-ready statistics bundle over a record list."""
    records = list(records)
    histogram = class_histogram(records)
    graphs, unique = song_graphs(records)
    report = degree_report(build_directed_graph(records))
    entries = [
        {
            "from": cls.from_family.value,
            "to": cls.to_family.value,
            "interval": cls.interval,
            "display": cls.display,
            "songs": count,
        }
        for cls, count in histogram.items()
    ]
    entries.sort(key=lambda e: (-e["songs"], e["display"]))
    return {
        "songs": len({r.song_id for r in records}),
        "records": len(records),
        "distinct_classes": len(histogram),
        "histogram": entries,
        "degrees": report["degrees"],
        "isolated": report["isolated"],
        "edge_totals": report["totals"],
        "unique_song_graphs": unique,
        "song_graphs": [
            {"songs": list(g.song_ids), "edges": [list(e) for e in g.canonical_edges]}
            for g in graphs
        ],
    }


def corpus_to_dot(graph: DirectedModulationGraph) -> str:
    """Directed DOT text with the observed-modulation legend.

    Blue edges are permitted by a pivot, red are not; dashed means the
    change was only seen with a pivot, dotted only without, and
    dashed+dotted means both usages were observed.
    """
    lines = ["digraph observed_modulations {"]
    for v in graph.vertices:
        lines.append(f'  "{vertex_name(v)}";')
    for (from_key, to_key), flags in sorted(
        graph.edges.items(), key=lambda kv: (format_key(kv[0][0]), format_key(kv[0][1]))
    ):
        if flags.observed_with_pivot and flags.observed_direct:
            style = "dashed,dotted"
        elif flags.observed_with_pivot:
            style = "dashed"
        else:
            style = "dotted"
        color = "blue" if flags.theory_permits_pivot else "red"
        lines.append(
            f'  "{vertex_name(from_key)}" -> "{vertex_name(to_key)}" '
            f'[style="{style}", color={color}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
