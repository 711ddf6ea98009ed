"""Pivot-modulation graphs over pitch-class scales.

Build graphs whose vertices are scale families and whose edges are the
triads two keys share, analyze their exact combinatorial structure
(cliques, independent sets, automorphisms, walks), and relate observed
song modulations to the theory.
"""

from .pitch import (
    SEMITONES,
    KeyFamily,
    KeyLabel,
    PitchError,
    Scale,
    ScaleKind,
    Triad,
    TriadQuality,
    build_scale,
    classify_triad,
    diatonic_triads,
    format_key,
    format_triad,
    make_triad,
    parse_key,
    parse_pitch,
    parse_triad,
    pitch_name,
    transpose,
)
from .graph import (
    PRESET_NAMES,
    PivotGraph,
    ScaleFamily,
    build_pivot_graph,
    circulant_signature,
    families_from_json,
    graph_to_dot,
    graph_to_json,
    major_family,
    make_family,
    minor_family,
    pivots,
    preset,
    preset_graph,
    vertex_name,
)
from .analysis import (
    AutomorphismGroup,
    VertexSetClass,
    Walk,
    analysis_report,
    automorphism_group,
    clique_and_independence_numbers,
    cycle_notation,
    diameter,
    is_automorphism,
    maximal_cliques,
    maximal_independent_sets,
    permutation_group_order,
    transposition_classes,
    walks,
)
from .corpus import (
    CorpusError,
    CorpusLintWarning,
    DirectedModulationGraph,
    Mechanism,
    ModulationClass,
    ModulationRecord,
    SongGraph,
    build_directed_graph,
    canonicalize_edges,
    class_histogram,
    class_of,
    contains_up_to_transposition,
    corpus_stats,
    corpus_to_dot,
    degree_report,
    fixture_corpus,
    load_corpus,
    song_graphs,
)

__version__ = "0.1.0"
