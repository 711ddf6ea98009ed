"""The subset-scan reference route against the branch-and-bound enumerator."""

import random

import numpy as np
import pytest

from modugraph import exhaustive
from modugraph.analysis import maximal_cliques, maximal_independent_sets
from modugraph.graph import build_pivot_graph, make_family, preset_graph
from modugraph.pitch import KeyFamily, KeyLabel, Scale, ScaleKind


def random_family_graph(rng, n_vertices):
    """A pivot graph over arbitrary scale groupings (not preset-shaped)."""
    labels = rng.sample(
        [KeyLabel(t, f) for t in range(12) for f in KeyFamily], n_vertices
    )
    families = []
    for label in labels:
        scales = {
            Scale(rng.randrange(12), rng.choice(list(ScaleKind)))
            for _ in range(rng.randint(1, 3))
        }
        families.append(make_family(label, scales))
    return build_pivot_graph(families)


@pytest.mark.parametrize("name", ["major12", "minor12"])
def test_scan_agrees_with_enumerator_on_presets(name):
    graph = preset_graph(name)
    assert set(exhaustive.maximal_cliques_exhaustive(graph.adjacency)) == set(
        maximal_cliques(graph)
    )
    assert set(exhaustive.maximal_independent_sets_exhaustive(graph.adjacency)) == set(
        maximal_independent_sets(graph)
    )


def test_scan_agrees_on_random_family_graphs():
    rng = random.Random(20250810)
    for _ in range(10):
        graph = random_family_graph(rng, rng.randint(4, 10))
        assert set(exhaustive.maximal_cliques_exhaustive(graph.adjacency)) == set(
            maximal_cliques(graph)
        )


def test_both_backends_return_identical_masks():
    if exhaustive._numba_scan is None:
        pytest.skip("numba backend disabled")
    for name in ("major12", "minor12"):
        masks = exhaustive.adjacency_masks(preset_graph(name).adjacency)
        assert np.array_equal(
            exhaustive.scan_masks_numba(masks), exhaustive.scan_masks_numpy(masks)
        )


def test_every_scan_result_is_a_maximal_clique():
    graph = preset_graph("minor12")
    adjacency = graph.adjacency
    found = exhaustive.maximal_cliques_exhaustive(adjacency)
    assert len(set(found)) == len(found)
    for clique in found:
        members = sorted(clique)
        for a in members:
            for b in members:
                assert a == b or b in adjacency[a]
        outside = set(range(graph.n)) - clique
        assert all(not clique <= adjacency[v] for v in outside)


def test_vertex_cap():
    with pytest.raises(ValueError, match="at most"):
        exhaustive.adjacency_masks([set()] * 25)


def test_complement_masks_have_no_loops():
    masks = exhaustive.adjacency_masks(preset_graph("major12").adjacency)
    comp = exhaustive.complement_masks(masks)
    for i, m in enumerate(comp):
        assert not (int(m) >> i) & 1
        assert int(masks[i]) & int(m) == 0
