"""Brute-force clique and independent-set enumeration by subset scan.

Reference route used to cross-check the branch-and-bound enumerator in
:mod:`modugraph.analysis`: every one of the 2^n vertex subsets is
tested literally against the clique and maximality definitions, with
vertices packed into integer bitmasks. The scan is the one hot loop in
this package (2^24 subsets for the combined preset), so it runs through
a numba kernel when available; setting ``MODUGRAPH_NO_NUMBA=1`` (or
lacking numba) selects a chunked vectorized numpy pass instead. Both
paths are exact and return identical results.
"""

from __future__ import annotations

import os
from typing import AbstractSet, Sequence

import numpy as np

ENV_FLAG = "MODUGRAPH_NO_NUMBA"
MAX_VERTICES = 24

# More maximal cliques than any graph on MAX_VERTICES vertices can have
# (Moon-Moser bound 3^(n/3)).
_RESULT_CAP = 8192

_numba_scan = None
if os.environ.get(ENV_FLAG, "").strip() in ("", "0"):
    try:
        import numba
    except ImportError:
        numba = None
    if numba is not None:

        @numba.njit(cache=True)
        def _scan_kernel(masks: np.ndarray, n: int, out: np.ndarray) -> int:  # pragma: no cover - jitted
            count = 0
            for s in range(1, 1 << n):
                is_clique = True
                for i in range(n):
                    if (s >> i) & 1:
                        if s & ~(masks[i] | (1 << i)):
                            is_clique = False
                            break
                if not is_clique:
                    continue
                extendable = False
                for v in range(n):
                    if ((s >> v) & 1) == 0 and (s & ~masks[v]) == 0:
                        extendable = True
                        break
                if not extendable:
                    out[count] = s
                    count += 1
            return count

        _numba_scan = _scan_kernel

ACTIVE_BACKEND = "numba" if _numba_scan is not None else "numpy"


def adjacency_masks(adjacency: Sequence[AbstractSet[int]]) -> np.ndarray:
    """Pack neighbor sets into one int64 bitmask per vertex."""
    n = len(adjacency)
    if n > MAX_VERTICES:
        raise ValueError(f"subset scan supports at most {MAX_VERTICES} vertices, got {n}")
    masks = np.zeros(n, dtype=np.int64)
    for i, neighbors in enumerate(adjacency):
        m = 0
        for j in neighbors:
            m |= 1 << j
        masks[i] = m
    return masks


def complement_masks(masks: np.ndarray) -> np.ndarray:
    """Bitmasks of the complement graph (no loops)."""
    n = len(masks)
    full = (1 << n) - 1
    bits = np.int64(1) << np.arange(n, dtype=np.int64)
    return (full & ~masks) & ~bits


def scan_masks_numpy(masks: np.ndarray) -> np.ndarray:
    """Vectorized subset scan: chunked passes over all 2^n subsets."""
    n = len(masks)
    closed = masks | (np.int64(1) << np.arange(n, dtype=np.int64))
    total = 1 << n
    chunk = min(total, 1 << 20)
    found = []
    for start in range(0, total, chunk):
        s = np.arange(start, min(start + chunk, total), dtype=np.int64)
        is_clique = np.ones(s.shape, dtype=bool)
        for i in range(n):
            has_i = ((s >> i) & 1).astype(bool)
            fits = (s & ~closed[i]) == 0
            is_clique &= ~has_i | fits
        extendable = np.zeros(s.shape, dtype=bool)
        for v in range(n):
            outside = ((s >> v) & 1) == 0
            covers = (s & ~masks[v]) == 0
            extendable |= outside & covers
        keep = is_clique & ~extendable & (s != 0)
        found.append(s[keep])
    return np.concatenate(found) if found else np.empty(0, dtype=np.int64)


def scan_masks_numba(masks: np.ndarray) -> np.ndarray:
    """Subset scan through the jitted kernel; raises if numba is off."""
    if _numba_scan is None:
        raise RuntimeError(f"numba backend unavailable (is {ENV_FLAG} set?)")
    out = np.zeros(_RESULT_CAP, dtype=np.int64)
    count = _numba_scan(masks, len(masks), out)
    return out[:count].copy()


def scan_masks(masks: np.ndarray) -> np.ndarray:
    return scan_masks_numba(masks) if _numba_scan is not None else scan_masks_numpy(masks)


def _masks_to_sets(found: np.ndarray, n: int) -> list[frozenset[int]]:
    return [frozenset(i for i in range(n) if (int(s) >> i) & 1) for s in found]


def maximal_cliques_exhaustive(adjacency: Sequence[AbstractSet[int]]) -> list[frozenset[int]]:
    """Every inclusion-maximal clique, found by scanning all subsets."""
    masks = adjacency_masks(adjacency)
    return _masks_to_sets(scan_masks(masks), len(masks))


def maximal_independent_sets_exhaustive(adjacency: Sequence[AbstractSet[int]]) -> list[frozenset[int]]:
    """Every maximal independent set: the scan applied to the complement."""
    masks = complement_masks(adjacency_masks(adjacency))
    return _masks_to_sets(scan_masks(masks), len(masks))
