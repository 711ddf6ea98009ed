"""Corpus ingestion, directed graph typing, classes, and song graphs."""

import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modugraph.corpus import (
    CorpusError,
    CorpusLintWarning,
    Mechanism,
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
from modugraph.pitch import KeyFamily, KeyLabel, parse_key

HEADER = "song_id,title,from_key,to_key,mechanism,pivot\n"


def load(rows):
    return load_corpus(HEADER + "".join(r + "\n" for r in rows))


def test_pivot_row_parses():
    records = load(["tfy,Think For Yourself,a:min,G:maj,pivot,C:maj"])
    assert len(records) == 1
    r = records[0]
    assert r.from_key == parse_key("a:min")
    assert r.to_key == parse_key("G:maj")
    assert r.mechanism is Mechanism.PIVOT
    assert r.pivot is not None and str(r.pivot) == "C:maj"


def test_duplicate_modulations_collapse():
    records = load(
        ["x,Song,C:maj,G:maj,direct,", "x,Song,C:maj,G:maj,direct,"]
    )
    assert len(records) == 1


def test_dedup_is_idempotent_under_concatenation():
    rows = ["x,Song,C:maj,G:maj,direct,", "x,Song,G:maj,C:maj,pivot,C:maj"]
    once = load(rows)
    twice = load(rows + rows)
    assert once == twice


def test_direct_row_with_pivot_is_rejected():
    with pytest.raises(CorpusError, match="must not carry a pivot"):
        load(["x,Song,C:maj,G:maj,direct,C:maj"])


def test_pivot_row_without_pivot_is_rejected():
    with pytest.raises(CorpusError, match="requires a pivot"):
        load(["x,Song,C:maj,G:maj,pivot,"])


def test_errors_carry_line_numbers():
    with pytest.raises(CorpusError) as info:
        load(["ok,Song,C:maj,G:maj,direct,", "bad,Song,H:maj,G:maj,direct,"])
    assert info.value.line == 3
    with pytest.raises(CorpusError, match="mechanism"):
        load(["x,Song,C:maj,G:maj,teleport,"])
    with pytest.raises(CorpusError, match="header"):
        load_corpus("a,b,c\n")
    with pytest.raises(CorpusError, match="does not change key"):
        load(["x,Song,C:maj,C:maj,direct,"])


def test_unshared_pivot_warns_but_loads():
    with pytest.warns(CorpusLintWarning, match="not shared"):
        records = load(["x,Song,C:maj,Db:maj,pivot,C:maj"])
    assert len(records) == 1


def test_fixture_loads_without_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("error", CorpusLintWarning)
        records = fixture_corpus()
    assert {r.song_id for r in records} == {"tfy", "drobert", "blackbird", "gds", "hte"}


def test_class_of_examples():
    relative = class_of(parse_key("a:min"), parse_key("C:maj"))
    assert (relative.from_family, relative.to_family, relative.interval) == (
        KeyFamily.MINOR,
        KeyFamily.MAJOR,
        3,
    )
    assert class_of(parse_key("E:min"), parse_key("G:maj")) == relative
    parallel = class_of(parse_key("C:maj"), parse_key("c:min"))
    assert (parallel.from_family, parallel.to_family, parallel.interval) == (
        KeyFamily.MAJOR,
        KeyFamily.MINOR,
        0,
    )
    with pytest.raises(ValueError, match="not a modulation"):
        class_of(parse_key("C:maj"), parse_key("C:maj"))


def test_class_of_is_transposition_invariant():
    for from_family in KeyFamily:
        for to_family in KeyFamily:
            for interval in range(12):
                if from_family == to_family and interval == 0:
                    continue
                classes = {
                    class_of(
                        KeyLabel(k, from_family), KeyLabel((k + interval) % 12, to_family)
                    )
                    for k in range(12)
                }
                assert len(classes) == 1


def test_directed_graph_flags():
    records = load(["tfy,Think For Yourself,a:min,G:maj,pivot,C:maj"])
    graph = build_directed_graph(records)
    assert len(graph.vertices) == 24
    flags = graph.edges[(parse_key("a:min"), parse_key("G:maj"))]
    assert flags.observed_with_pivot and not flags.observed_direct
    assert flags.theory_permits_pivot


def test_empty_corpus_builds_isolated_graph():
    graph = build_directed_graph(load([]))
    assert graph.edges == {}
    report = degree_report(graph)
    assert len(report["isolated"]) == 24
    assert report["totals"]["edges"] == 0


def test_pivotless_major_classes_have_no_theory_pivot():
    for target in ("Db:maj", "E:maj", "Ab:maj"):  # up 1, 4, and 8 semitones
        records = load([f"x,Song,C:maj,{target},direct,"])
        flags = build_directed_graph(records).edges[(parse_key("C:maj"), parse_key(target))]
        assert not flags.theory_permits_pivot


def test_both_mechanisms_set_both_flags():
    records = load(
        ["x,Song,C:maj,G:maj,pivot,C:maj", "y,Other,C:maj,G:maj,direct,"]
    )
    flags = build_directed_graph(records).edges[(parse_key("C:maj"), parse_key("G:maj"))]
    assert flags.observed_with_pivot and flags.observed_direct


def test_transitional_counts_as_direct_for_edge_typing():
    records = load(["x,Song,C:maj,G:maj,transitional,"])
    flags = build_directed_graph(records).edges[(parse_key("C:maj"), parse_key("G:maj"))]
    assert flags.observed_direct and not flags.observed_with_pivot


def test_histogram_counts_distinct_songs():
    records = load(
        [
            "dr,Doctor Robert,A:maj,B:maj,direct,",
            "dr,Doctor Robert,B:maj,A:maj,direct,",
        ]
    )
    histogram = class_histogram(records)
    up2 = class_of(parse_key("A:maj"), parse_key("B:maj"))
    down2 = class_of(parse_key("B:maj"), parse_key("A:maj"))
    assert histogram == {up2: 1, down2: 1}
    assert class_histogram([]) == {}


def test_song_graph_canonicalization():
    records = fixture_corpus()
    graphs, unique = song_graphs(records)
    by_song = {s: g for g in graphs for s in g.song_ids}
    assert by_song["drobert"] is by_song["blackbird"]
    doctor = by_song["drobert"].canonical_edges
    assert set(doctor) == {("M", 0, "M", 2), ("M", 2, "M", 0)}
    sunshine = by_song["gds"].canonical_edges
    assert contains_up_to_transposition(sunshine, doctor)
    assert len(sunshine) > len(doctor)
    assert unique == 4  # doctor/blackbird collapse; tfy, gds, hte distinct


def test_single_modulation_song_is_one_graph():
    graphs, unique = song_graphs(load(["x,Song,C:maj,G:maj,direct,"]))
    assert unique == 1 and graphs[0].song_ids == ("x",)


@given(st.integers(0, 11))
def test_canonicalization_is_transposition_equivariant(k):
    edges = {("M", 9, "M", 11), ("M", 11, "M", 9), ("m", 4, "M", 7)}
    shifted = {(fc, (fo + k) % 12, tc, (to + k) % 12) for fc, fo, tc, to in edges}
    assert canonicalize_edges(edges) == canonicalize_edges(shifted)
    assert canonicalize_edges(canonicalize_edges(edges)) == canonicalize_edges(edges)


def test_degree_report_on_fixture():
    records = fixture_corpus()
    report = degree_report(build_directed_graph(records))
    totals = report["totals"]
    assert totals["edges"] == totals["pivot_only"] + totals["direct_only"] + totals["both"]
    assert totals["edges"] == 9  # 11 records, gds/drobert share A->B and B->A
    assert report["degrees"]["G:maj"] == {"in": 3, "out": 3}


def test_corpus_stats_bundle():
    stats = corpus_stats(fixture_corpus())
    assert stats["songs"] == 5
    assert stats["records"] == 11
    assert stats["unique_song_graphs"] == 4
    displays = {e["display"]: e["songs"] for e in stats["histogram"]}
    assert displays["M_i -> M_i+2"] == 3  # drobert, blackbird, gds
    assert displays["m_i -> M_i+10"] == 1
    # per-class count never exceeds the song count; every modulating song
    # appears in at least one class
    assert all(e["songs"] <= stats["songs"] for e in stats["histogram"])
    assert sum(e["songs"] for e in stats["histogram"]) >= stats["songs"]


def test_corpus_dot_styles():
    records = fixture_corpus()
    dot = corpus_to_dot(build_directed_graph(records))
    assert '"m_a" -> "M_G" [style="dashed", color=blue];' in dot
    # the semitone-up major move has no pivot in theory: red and dotted
    assert '"M_B" -> "M_C" [style="dotted", color=red];' in dot
    assert dot.count("->") == 9
