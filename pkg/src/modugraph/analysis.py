"""Exact combinatorial analysis of pivot graphs.

Everything here is exact: maximal cliques come from a pivoting
Bron-Kerbosch search, independent sets are the cliques of the
complement, the automorphism group is found by backtracking over
adjacency-preserving maps with the order read off a stabilizer chain,
and walks are enumerated depth-first. Enumerated vertex sets are
grouped into transposition classes so results line up with the
class/count presentation of the 12-fold symmetric presets.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import PivotGraph
from .pitch import SEMITONES, KeyFamily, KeyLabel, Triad, triad_sort_key

_FAMILY_CODE = {KeyFamily.MAJOR: "M", KeyFamily.MINOR: "m"}


# ---------------------------------------------------------------------------
# cliques and independent sets


def _bron_kerbosch(adjacency: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    """All maximal cliques via Bron-Kerbosch with pivot selection."""
    cliques: list[frozenset[int]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            cliques.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(p & adjacency[u]))
        for v in sorted(p - adjacency[pivot]):
            expand(r | {v}, p & adjacency[v], x & adjacency[v])
            p.remove(v)
            x.add(v)

    expand(set(), set(range(len(adjacency))), set())
    return sorted(cliques, key=lambda c: tuple(sorted(c)))


def _complement_adjacency(graph: PivotGraph) -> list[frozenset[int]]:
    everyone = set(range(graph.n))
    return [frozenset(everyone - graph.adjacency[i] - {i}) for i in range(graph.n)]


def maximal_cliques(graph: PivotGraph) -> list[frozenset[int]]:
    """All inclusion-maximal cliques, as vertex-index sets."""
    return _bron_kerbosch(graph.adjacency)


def maximal_independent_sets(graph: PivotGraph) -> list[frozenset[int]]:
    """All maximal independent sets (maximal cliques of the complement)."""
    return _bron_kerbosch(_complement_adjacency(graph))


def clique_and_independence_numbers(graph: PivotGraph) -> tuple[int, int]:
    """(omega, alpha): largest clique and largest independent set sizes."""
    omega = max((len(c) for c in maximal_cliques(graph)), default=0)
    alpha = max((len(s) for s in maximal_independent_sets(graph)), default=0)
    return omega, alpha


# ---------------------------------------------------------------------------
# distances


def diameter(graph: PivotGraph) -> Optional[int]:
    """Largest shortest-path distance; None when the graph is disconnected."""
    n = graph.n
    best = 0
    for source in range(n):
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in graph.adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        if len(dist) < n:
            return None
        best = max(best, max(dist.values()))
    return best


# ---------------------------------------------------------------------------
# transposition classes


@dataclass(frozen=True)
class VertexSetClass:
    """An orbit of vertex sets under transposing every tonic by the same k.

    The representative is normalized so that its lexicographically least
    translate is used (majors sort before minors, so some element always
    sits at offset 0).
    """

    representative: tuple[tuple[str, int], ...]
    members: tuple[frozenset[int], ...]

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def display(self) -> str:
        parts = []
        for code, offset in self.representative:
            parts.append(f"{code}_i" if offset == 0 else f"{code}_i+{offset}")
        return "{" + ", ".join(parts) + "}"


def _encode(labels: Sequence[KeyLabel], vertex_set: frozenset[int]) -> tuple[tuple[str, int], ...]:
    return tuple(sorted((_FAMILY_CODE[labels[v].family], labels[v].tonic) for v in vertex_set))


def canonical_class_form(encoded: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    """Least translate of a (family, offset) set over the 12 transpositions."""
    elems = tuple(encoded)
    return min(
        tuple(sorted((code, (offset + k) % SEMITONES) for code, offset in elems))
        for k in range(SEMITONES)
    )


def transposition_classes(
    vertex_sets: Iterable[frozenset[int]], graph: PivotGraph
) -> list[VertexSetClass]:
    """Partition vertex sets into transposition orbits with counts."""
    labels = graph.labels
    groups: dict[tuple[tuple[str, int], ...], list[frozenset[int]]] = {}
    for vs in vertex_sets:
        groups.setdefault(canonical_class_form(_encode(labels, vs)), []).append(vs)
    classes = [
        VertexSetClass(rep, tuple(sorted(members, key=lambda s: tuple(sorted(s)))))
        for rep, members in groups.items()
    ]
    return sorted(classes, key=lambda c: (len(c.representative), c.representative))


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class AutomorphismGroup:
    """Adjacency-preserving vertex permutations: generators plus group order."""

    generators: tuple[tuple[int, ...], ...]
    order: int


def is_automorphism(graph: PivotGraph, perm: Sequence[int]) -> bool:
    """Direct check: edges map to edges and non-edges to non-edges."""
    n = graph.n
    if sorted(perm) != list(range(n)):
        return False
    return all(
        graph.has_edge(i, j) == graph.has_edge(perm[i], perm[j])
        for i in range(n)
        for j in range(i + 1, n)
    )


def _adjacency_bits(graph: PivotGraph) -> list[int]:
    masks = []
    for i in range(graph.n):
        m = 0
        for j in graph.adjacency[i]:
            m |= 1 << j
        masks.append(m)
    return masks


def _complete_map(adj: list[int], degree_masks: dict[int, int], prescribed: dict[int, int]) -> Optional[list[int]]:
    """Extend a partial vertex map to a full automorphism, or prove none exists.

    Backtracking with fail-first vertex selection: at each node the
    candidate images of every unmapped vertex are intersected (as
    bitmasks) against the constraints imposed by the mapped vertices,
    and the most constrained vertex is branched on.
    """
    n = len(adj)
    degrees = [bin(m).count("1") for m in adj]
    full = (1 << n) - 1
    image = [-1] * n
    used = 0
    items = list(prescribed.items())
    for idx, (u, w) in enumerate(items):
        if degrees[u] != degrees[w] or (used >> w) & 1:
            return None
        for x, y in items[:idx]:
            if ((adj[u] >> x) & 1) != ((adj[w] >> y) & 1):
                return None
        image[u] = w
        used |= 1 << w
    assigned = [u for u, _ in items]

    def search() -> bool:
        nonlocal used
        if len(assigned) == n:
            return True
        best_u, best_cand, best_size = -1, 0, n + 1
        for u in range(n):
            if image[u] >= 0:
                continue
            cand = full & ~used & degree_masks[degrees[u]]
            for x in assigned:
                cand &= adj[image[x]] if (adj[u] >> x) & 1 else ~adj[image[x]]
            cand &= full
            size = bin(cand).count("1")
            if size == 0:
                return False
            if size < best_size:
                best_u, best_cand, best_size = u, cand, size
        assigned.append(best_u)
        cand = best_cand
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            image[best_u] = w
            used |= 1 << w
            if search():
                return True
            used ^= 1 << w
            image[best_u] = -1
        assigned.pop()
        return False

    return image if search() else None


def automorphism_group(graph: PivotGraph) -> AutomorphismGroup:
    """Find the full automorphism group by a stabilizer chain.

    For each base vertex in turn, backtracking finds one coset
    representative per image reachable while the earlier base vertices
    stay fixed; the group order is the product of the orbit sizes, and
    the collected representatives form a (strong) generating set.
    """
    n = graph.n
    adj = _adjacency_bits(graph)
    degrees = [bin(m).count("1") for m in adj]
    degree_masks: dict[int, int] = {}
    for v, d in enumerate(degrees):
        degree_masks[d] = degree_masks.get(d, 0) | (1 << v)

    prescribed: dict[int, int] = {}
    order = 1
    generators: list[tuple[int, ...]] = []
    for b in range(n):
        orbit = 1
        for v in range(n):
            if v == b or degrees[v] != degrees[b]:
                continue
            perm = _complete_map(adj, degree_masks, {**prescribed, b: v})
            if perm is not None:
                orbit += 1
                generators.append(tuple(perm))
        order *= orbit
        prescribed[b] = b
    return AutomorphismGroup(tuple(generators), order)


def permutation_group_order(generators: Iterable[Sequence[int]], n: int) -> int:
    """Order of the group generated by permutations, by closure search.

    Independent of the stabilizer chain: materializes every element by
    breadth-first composition, so it doubles as an oracle for the order
    reported by :func:`automorphism_group` (fine up to ~10^6 elements).
    """
    gens = [tuple(g) for g in generators]
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def cycle_notation(perm: Sequence[int], names: Sequence[str]) -> str:
    """Cycle string over vertex names, fixed points omitted."""
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        v = perm[start]
        while v != start:
            cycle.append(v)
            seen[v] = True
            v = perm[v]
        parts.append("(" + ", ".join(names[v] for v in cycle) + ")")
    return "".join(parts) if parts else "()"


# ---------------------------------------------------------------------------
# walks


@dataclass(frozen=True)
class Walk:
    """A walk through the graph; pivot_choices picks one labeled edge per step."""

    vertices: tuple[int, ...]
    pivot_choices: Optional[tuple[Triad, ...]] = None


def walks(
    graph: PivotGraph,
    start: int,
    end: int,
    steps: int,
    *,
    no_backtrack: bool = False,
    with_pivots: bool = False,
) -> list[Walk]:
    """All walks of exactly ``steps`` edges from start to end.

    Vertices may repeat (these are walks, not paths) unless
    ``no_backtrack`` forbids immediate reversals. With ``with_pivots``
    each walk is expanded into one entry per combination of pivot-triad
    choices, i.e. the walks of the labeled multigraph.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    for v in (start, end):
        if not 0 <= v < graph.n:
            raise KeyError(f"unknown vertex index {v}")
    found: list[tuple[int, ...]] = []
    path = [start]

    def extend(u: int, remaining: int) -> None:
        if remaining == 0:
            if u == end:
                found.append(tuple(path))
            return
        for v in sorted(graph.adjacency[u]):
            if no_backtrack and len(path) >= 2 and v == path[-2]:
                continue
            path.append(v)
            extend(v, remaining - 1)
            path.pop()

    extend(start, steps)
    if not with_pivots:
        return [Walk(p) for p in found]
    expanded = []
    for p in found:
        options = [
            sorted(graph.edge_pivots(p[k], p[k + 1]), key=triad_sort_key)
            for k in range(len(p) - 1)
        ]
        for choice in itertools.product(*options):
            expanded.append(Walk(p, tuple(choice)))
    return expanded


# ---------------------------------------------------------------------------
# report


def analysis_report(graph: PivotGraph) -> dict:
    """The full JSON-ready analysis bundle for one graph."""
    cliques = maximal_cliques(graph)
    indep_sets = maximal_independent_sets(graph)
    group = automorphism_group(graph)
    names = graph.vertex_names
    return {
        "vertex_count": graph.n,
        "edge_count": len(graph.labeled_edges),
        "diameter": diameter(graph),
        "omega": max((len(c) for c in cliques), default=0),
        "alpha": max((len(s) for s in indep_sets), default=0),
        "clique_classes": [
            {"representative": c.display, "count": c.count}
            for c in transposition_classes(cliques, graph)
        ],
        "independent_set_classes": [
            {"representative": c.display, "count": c.count}
            for c in transposition_classes(indep_sets, graph)
        ],
        "automorphism": {
            "order": group.order,
            "generators": [cycle_notation(g, names) for g in group.generators],
        },
    }
