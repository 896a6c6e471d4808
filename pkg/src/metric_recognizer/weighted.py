"""Shortest paths on positive-weighted graphs and useful-edge detection."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import Disconnected
from .graph import WeightedGraph
from .matrix import DistanceMatrix, classify, _INT64_LIMIT


def apsp(W: WeightedGraph, *, eps: float | None = None) -> DistanceMatrix:
    """All-pairs shortest path lengths by Floyd-Warshall relaxation.

    Exact unless ``eps`` is given or any weight is a float; exact weights are
    brought to a common denominator and relaxed as integers.

    Raises
    ------
    Disconnected
        Some pair has no path; reports the smallest such pair.
    """
    m = W.order
    triples = W.edges()
    floats = eps is not None or any(isinstance(w, float) for _, _, w in triples)
    if floats:
        dist = np.full((m, m), np.inf)
        for u, v, w in triples:
            dist[u, v] = dist[v, u] = float(w)
        scale = 1
        inf = np.inf
        eps = eps if eps is not None else 1e-9
    else:
        fr = [(u, v, Fraction(w)) for u, v, w in triples]
        scale = 1
        for _, _, w in fr:
            scale = math.lcm(scale, w.denominator)
        ints = [(u, v, w.numerator * (scale // w.denominator)) for u, v, w in fr]
        inf = sum(w for _, _, w in ints) + 1
        dtype = np.int64 if inf < _INT64_LIMIT else object
        dist = np.full((m, m), inf, dtype=dtype)
        for u, v, w in ints:
            dist[u, v] = dist[v, u] = w
    np.fill_diagonal(dist, 0)
    for k in range(m):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    far = np.argwhere(dist >= inf)
    if far.size:
        i, j = (int(t) for t in far[0])
        raise Disconnected(i, j)
    return DistanceMatrix._trusted(dist, scale, eps if floats else None)


def useful_edges_by_deletion(W: WeightedGraph) -> set[tuple[int, int]]:
    """Edges whose removal strictly increases some distance (or disconnects)."""
    base = apsp(W)
    useful = set()
    for u, v, _ in W.edges():
        try:
            D = apsp(W.without_edge(u, v))
        except Disconnected:
            useful.add((u, v))
            continue
        if _any_greater(D, base):
            useful.add((u, v))
    return useful


def _any_greater(A: DistanceMatrix, B: DistanceMatrix) -> bool:
    if A.exact and B.exact:
        a = A.values.astype(object) * B.scale
        b = B.values.astype(object) * A.scale
        return bool(np.any(a > b))
    tol = A.eps or B.eps
    return bool(np.any(A.as_float_array() > B.as_float_array() + tol))


def useful_edges_by_indecomposability(W: WeightedGraph) -> set[tuple[int, int]]:
    """Edges ``(i, j)`` whose distance entry is indecomposable."""
    C = classify(apsp(W))
    return {(u, v) for u, v, _ in W.edges() if C.mask[u, v]}


def useful_edges(W: WeightedGraph) -> set[tuple[int, int]]:
    """Useful edges of ``W``, computed by deletion and by indecomposability.

    The two routes must agree; a mismatch raises ``AssertionError``.
    """
    by_deletion = useful_edges_by_deletion(W)
    by_entries = useful_edges_by_indecomposability(W)
    if by_deletion != by_entries:
        raise AssertionError(
            f"useful-edge routes disagree: deletion-only {sorted(by_deletion - by_entries)}, "
            f"entry-only {sorted(by_entries - by_deletion)}"
        )
    return by_deletion
