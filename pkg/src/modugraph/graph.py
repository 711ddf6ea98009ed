"""Scale families and pivot-modulation graphs.

A vertex merges the related scales on one tonic (major with mixolydian,
or the three minor variants); its triad set is the union of the member
scales' diatonic triads. Two vertices are joined when their triad sets
intersect, and each shared triad labels one edge of the multigraph
view. Graphs are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Union

from .pitch import (
    SEMITONES,
    KeyFamily,
    KeyLabel,
    Scale,
    ScaleKind,
    Triad,
    diatonic_triads,
    format_key,
    format_triads,
    parse_key,
    parse_pitch,
)

PRESET_NAMES = ("major12", "minor12", "combined24")

MAJOR_SIDE_KINDS = (ScaleKind.MAJOR, ScaleKind.MIXOLYDIAN)
MINOR_SIDE_KINDS = (
    ScaleKind.NATURAL_MINOR,
    ScaleKind.HARMONIC_MINOR,
    ScaleKind.MELODIC_MINOR,
)

_KIND_ORDER = {kind: i for i, kind in enumerate(ScaleKind)}


@dataclass(frozen=True)
class ScaleFamily:
    """A graph vertex: a labeled set of scales with their merged triads."""

    label: KeyLabel
    scales: frozenset[Scale]
    triads: frozenset[Triad]

    def __str__(self) -> str:
        return vertex_name(self.label)


def make_family(label: KeyLabel, scales: Iterable[Scale]) -> ScaleFamily:
    """Merge scales into one vertex; the triad set is their exact union."""
    scale_set = frozenset(scales)
    if not scale_set:
        raise ValueError(f"family {format_key(label)} needs at least one scale")
    triads = frozenset(t for s in scale_set for t in diatonic_triads(s))
    return ScaleFamily(label, scale_set, triads)


def pivots(f1: ScaleFamily, f2: ScaleFamily) -> frozenset[Triad]:
    """Triads shared by two families; empty means no pivot modulation."""
    if f1 == f2:
        raise ValueError(f"modulation requires two distinct keys, got {f1} twice")
    return f1.triads & f2.triads


def vertex_name(label: KeyLabel) -> str:
    """Figure-style vertex name: M_<Note> for majors, m_<note> for minors."""
    prefix = "M" if label.family is KeyFamily.MAJOR else "m"
    return f"{prefix}_{label.display}"


@dataclass(frozen=True, eq=False)
class PivotGraph:
    """Immutable pivot-modulation graph over a list of scale families.

    ``labeled_edges`` maps an index pair (i, j) with i < j to the pivot
    triads shared by vertices i and j; the simple graph is exactly the
    key set of that mapping.
    """

    vertices: tuple[ScaleFamily, ...]
    labeled_edges: dict[tuple[int, int], frozenset[Triad]]
    adjacency: tuple[frozenset[int], ...] = field(init=False)

    def __post_init__(self) -> None:
        neighbors: list[set[int]] = [set() for _ in self.vertices]
        for i, j in self.labeled_edges:
            neighbors[i].add(j)
            neighbors[j].add(i)
        object.__setattr__(self, "adjacency", tuple(frozenset(ns) for ns in neighbors))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def simple_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.labeled_edges)

    @property
    def labels(self) -> tuple[KeyLabel, ...]:
        return tuple(f.label for f in self.vertices)

    @property
    def vertex_names(self) -> tuple[str, ...]:
        return tuple(vertex_name(f.label) for f in self.vertices)

    def index_of(self, key: Union[KeyLabel, str]) -> int:
        """Vertex index for a key label or key text; KeyError if absent."""
        label = parse_key(key) if isinstance(key, str) else key
        for i, f in enumerate(self.vertices):
            if f.label == label:
                return i
        raise KeyError(f"no vertex {format_key(label)} in this graph")

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.labeled_edges

    def edge_pivots(self, i: int, j: int) -> frozenset[Triad]:
        return self.labeled_edges.get((min(i, j), max(i, j)), frozenset())


def build_pivot_graph(families: Iterable[ScaleFamily]) -> PivotGraph:
    """Connect every pair of families that shares at least one triad."""
    vertices = tuple(families)
    seen: set[KeyLabel] = set()
    for f in vertices:
        if f.label in seen:
            raise ValueError(f"duplicate vertex label {format_key(f.label)}")
        seen.add(f.label)
    labeled: dict[tuple[int, int], frozenset[Triad]] = {}
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            shared = vertices[i].triads & vertices[j].triads
            if shared:
                labeled[(i, j)] = shared
    return PivotGraph(vertices, labeled)


def major_family(tonic: int) -> ScaleFamily:
    """Major + mixolydian scales on one tonic (an M_i vertex)."""
    label = KeyLabel(tonic, KeyFamily.MAJOR)
    return make_family(label, (Scale(tonic, k) for k in MAJOR_SIDE_KINDS))


def minor_family(tonic: int) -> ScaleFamily:
    """Natural + harmonic + melodic minor on one tonic (an m_i vertex)."""
    label = KeyLabel(tonic, KeyFamily.MINOR)
    return make_family(label, (Scale(tonic, k) for k in MINOR_SIDE_KINDS))


def preset(name: str) -> list[ScaleFamily]:
    """The canned vertex sets: major12, minor12, or combined24."""
    if name == "major12":
        return [major_family(i) for i in range(SEMITONES)]
    if name == "minor12":
        return [minor_family(i) for i in range(SEMITONES)]
    if name == "combined24":
        return preset("major12") + preset("minor12")
    raise ValueError(f"unknown preset {name!r} (expected one of {', '.join(PRESET_NAMES)})")


@lru_cache(maxsize=None)
def preset_graph(name: str) -> PivotGraph:
    """Build (and cache) the pivot graph for a preset."""
    return build_pivot_graph(preset(name))


def circulant_signature(graph: PivotGraph) -> Optional[frozenset[int]]:
    """Connection set S when the graph is circulant in construction order.

    Checks whether adjacency of (u, v) depends only on the circular
    distance (v - u) mod n: every distance class must be uniformly all
    edges or all non-edges. Returns the set of edge distances, or None
    when some distance class is mixed.
    """
    n = graph.n
    if n < 2:
        return None
    signature: set[int] = set()
    for d in range(1, n // 2 + 1):
        values = {graph.has_edge(i, (i + d) % n) for i in range(n)}
        if len(values) > 1:
            return None
        if values.pop():
            signature.add(d)
    return frozenset(signature)


def _scale_sort_key(scale: Scale) -> tuple[int, int]:
    return (_KIND_ORDER[scale.kind], scale.tonic)


def graph_to_json(graph: PivotGraph) -> dict:
    """Deterministic JSON-ready form: vertices with scales and triads, edges with pivots."""
    vertices = []
    for f in graph.vertices:
        scales = sorted(f.scales, key=_scale_sort_key)
        vertices.append(
            {
                "label": format_key(f.label),
                "name": vertex_name(f.label),
                "tonic": f.label.tonic,
                "family": f.label.family.value,
                "scales": [{"tonic": s.tonic, "kind": s.kind.value} for s in scales],
                "triads": format_triads(f.triads),
            }
        )
    edges = []
    for (i, j) in sorted(graph.labeled_edges):
        edges.append(
            {
                "between": [format_key(graph.vertices[i].label), format_key(graph.vertices[j].label)],
                "pivots": format_triads(graph.labeled_edges[(i, j)]),
            }
        )
    return {"vertex_count": graph.n, "vertices": vertices, "edges": edges}


def graph_to_dot(graph: PivotGraph) -> str:
    """Undirected DOT text with pivot triads on the edge labels."""
    names = graph.vertex_names
    lines = ["graph pivot_modulation {"]
    for name in names:
        lines.append(f'  "{name}";')
    for (i, j) in sorted(graph.labeled_edges):
        label = ", ".join(format_triads(graph.labeled_edges[(i, j)]))
        lines.append(f'  "{names[i]}" -- "{names[j]}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def families_from_json(doc: dict) -> list[ScaleFamily]:
    """Rebuild families from a custom-graph file or a graph JSON export.

    Accepts either a ``families`` or a ``vertices`` list whose entries
    carry ``label`` (key text) and ``scales`` (list of {tonic, kind});
    tonics may be integers or note names.
    """
    entries = doc.get("families", doc.get("vertices"))
    if entries is None:
        raise ValueError("graph document needs a 'families' or 'vertices' list")
    families = []
    for entry in entries:
        label = parse_key(entry["label"])
        scales = []
        for spec in entry["scales"]:
            tonic = spec["tonic"]
            if isinstance(tonic, str):
                tonic = parse_pitch(tonic)
            scales.append(Scale(int(tonic), ScaleKind(spec["kind"])))
        families.append(make_family(label, scales))
    return families
