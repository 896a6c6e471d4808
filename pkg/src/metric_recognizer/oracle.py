"""Brute-force realizability oracle, seeded instance generators and mutants.

Nothing here calls the recognizers or the tower-matrix kernel: the oracle
finds indecomposable entries with a plain triple loop and checks candidate
weightings with its own Floyd-Warshall over ``Fraction``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import SizeGuard, SpecError
from .graph import Embedding, Graph, WeightedGraph, hypercube, petersen
from .matrix import DistanceMatrix, PredistanceMatrix, to_fraction
from .matrix_io import format_matrix
from .weighted import apsp

ORACLE_MAX_ORDER = 10
DYADIC_BITS = 16


# --- oracle -----------------------------------------------------------------------

def _entries(D: DistanceMatrix) -> list[list[Fraction]]:
    if not D.exact:
        raise ValueError("the oracle works on exact matrices only")
    return D.rows()


def _indecomposable(d: list[list[Fraction]]) -> set[tuple[int, int]]:
    m = len(d)
    return {
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if all(d[i][j] < d[i][k] + d[k][j] for k in range(m) if k != i and k != j)
    }


def _floyd(m: int, weights: dict[tuple[int, int], Fraction]) -> list[list[Fraction | None]]:
    dist: list[list[Fraction | None]] = [[None] * m for _ in range(m)]
    for i in range(m):
        dist[i][i] = Fraction(0)
    for (i, j), w in weights.items():
        dist[i][j] = dist[j][i] = w
    for k in range(m):
        dk = dist[k]
        for i in range(m):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(m):
                if dk[j] is not None and (di[j] is None or dik + dk[j] < di[j]):
                    di[j] = dik + dk[j]
    return dist


def oracle_realizable(
    D: DistanceMatrix,
    target: Graph,
    *,
    all_useful: bool = False,
    labels=None,
) -> Embedding | None:
    """Search bijections from the matrix indices onto ``target`` for a realization.

    Every indecomposable entry must land on a target edge (a useful edge in
    any realization), which prunes the search. For each complete bijection
    the mapped entries weight their edges, remaining target edges get
    ``2 * max(D)``, and the weighted graph's distances are compared with ``D``.
    With ``all_useful`` every target edge must carry an indecomposable entry.

    Raises
    ------
    SizeGuard
        ``target`` has more than 10 vertices.
    ValueError
        Matrix order differs from the target order.
    """
    if target.order > ORACLE_MAX_ORDER:
        raise SizeGuard(f"oracle limited to order {ORACLE_MAX_ORDER}, got {target.order}")
    if D.m != target.order:
        raise ValueError(f"matrix order {D.m} differs from target order {target.order}")
    d = _entries(D)
    m = D.m
    skel = _indecomposable(d)
    if all_useful and len(skel) != target.edge_count():
        return None
    nbrs = [set() for _ in range(m)]
    for i, j in skel:
        nbrs[i].add(j)
        nbrs[j].add(i)
    # breadth-first order so each vertex after the first has a placed neighbour
    order, seen = [], set()
    for s in range(m):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(nbrs[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    extra = 2 * max(max(row) for row in d)
    image = [-1] * m
    used = [False] * m

    def verify() -> bool:
        inv = {t: s for s, t in enumerate(image)}
        weights = {}
        for a, b in target.edges():
            i, j = sorted((inv[a], inv[b]))
            if (i, j) in skel:
                weights[(i, j)] = d[i][j]
            elif all_useful:
                return False
            else:
                weights[(i, j)] = extra
        return _floyd(m, weights) == d

    def place(t: int) -> bool:
        if t == m:
            return verify()
        v = order[t]
        for c in range(m):
            if used[c] or target.degree(c) < len(nbrs[v]):
                continue
            if any(image[u] >= 0 and not target.has_edge(c, image[u]) for u in nbrs[v]):
                continue
            image[v] = c
            used[c] = True
            if place(t + 1):
                return True
            image[v] = -1
            used[c] = False
        return False

    if not place(0):
        return None
    names = labels if labels is not None else [str(c) for c in range(m)]
    return Embedding(tuple(image), tuple(names[c] for c in image))


# --- generators --------------------------------------------------------------------

_DEFAULT_RANGES = {
    "hypercube": (Fraction(1), Fraction(2)),
    "petersen": (Fraction(1), Fraction(4)),
    "tree": (Fraction(0), Fraction(10)),
    "q3-with-useless": (Fraction(1), Fraction(2)),
}

# Any detour around an edge uses at least this many edges, each weighing at
# least the lower bound, so hi <= ratio * lo makes every edge the unique
# shortest path between its endpoints.
_ALL_USEFUL_RATIO = {"hypercube": 2, "q3-with-useless": 2, "petersen": 4}


@dataclass(frozen=True)
class GeneratorSpec:
    """What to generate.

    ``size`` is n for ``hypercube``, the vertex count for ``tree`` and the
    number of useless edges t for ``q3-with-useless``. Weights are drawn from
    the half-open ``weight_range`` (open at 0 when the lower end is 0).
    """

    family: str
    size: int | None = None
    weight_range: tuple | None = None
    seed: int = 0

    def __post_init__(self):
        if self.family not in _DEFAULT_RANGES:
            raise SpecError(f"unknown family {self.family!r}; expected one of {sorted(_DEFAULT_RANGES)}")
        lo, hi = self.range
        if lo < 0 or hi <= lo:
            raise SpecError(f"bad weight range [{lo}, {hi})")
        ratio = _ALL_USEFUL_RATIO.get(self.family)
        if ratio is not None and (lo == 0 or hi > ratio * lo):
            raise SpecError(
                f"{self.family} weights must satisfy hi <= {ratio} * lo so every edge stays useful"
            )
        size = self.size
        if self.family == "hypercube" and not (size and 1 <= size <= 10):
            raise SpecError("hypercube needs size n in 1..10")
        if self.family == "tree" and not (size and size >= 2):
            raise SpecError("tree needs size m >= 2")
        if self.family == "q3-with-useless" and not (size is not None and 0 <= size <= 5):
            raise SpecError("q3-with-useless needs size t in 0..5")
        if not 0 <= self.seed < 2**64:
            raise SpecError("seed must be an unsigned 64-bit integer")

    @property
    def range(self) -> tuple[Fraction, Fraction]:
        if self.weight_range is None:
            return _DEFAULT_RANGES[self.family]
        lo, hi = self.weight_range
        return to_fraction(lo), to_fraction(hi)

    @property
    def name(self) -> str:
        size = "" if self.size is None else f"{self.size}"
        return f"{self.family}{size}-seed{self.seed}"


def _draw(rng: np.random.Generator, lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    top = 1 << DYADIC_BITS
    start = 1 if lo == 0 else 0
    ks = rng.integers(start, top, size=count)
    return [lo + (hi - lo) * Fraction(int(k), top) for k in ks]


def _weighted(rng, G: Graph, lo, hi) -> WeightedGraph:
    edges = G.edges()
    return WeightedGraph(G, dict(zip(edges, _draw(rng, lo, hi, len(edges)))))


def _random_tree(rng, m: int) -> Graph:
    perm = rng.permutation(m)
    edges = [(int(perm[v]), int(perm[rng.integers(0, v)])) for v in range(1, m)]
    return Graph(m, edges)


def gen_weighted(spec: GeneratorSpec) -> tuple[WeightedGraph, DistanceMatrix]:
    """Deterministic weighted graph and its distance matrix for ``spec``.

    ``q3-with-useless`` removes t random cube edges (keeping the rest
    connected), weights the rest from the requested range, then puts the removed
    edges back with weight twice the largest remaining distance, which makes
    exactly those t edges useless.
    """
    rng = np.random.default_rng(spec.seed)
    lo, hi = spec.range
    if spec.family == "hypercube":
        W = _weighted(rng, hypercube(spec.size), lo, hi)
    elif spec.family == "petersen":
        W = _weighted(rng, petersen(), lo, hi)
    elif spec.family == "tree":
        W = _weighted(rng, _random_tree(rng, spec.size), lo, hi)
    else:
        W = _q3_with_useless(rng, spec.size, lo, hi)
    return W, apsp(W)


def _q3_with_useless(rng, t: int, lo, hi) -> WeightedGraph:
    cube = hypercube(3)
    edges = cube.edges()
    while True:
        picked = sorted(int(i) for i in rng.choice(len(edges), size=t, replace=False))
        removed = {edges[i] for i in picked}
        kept = Graph(8, [e for e in edges if e not in removed])
        if kept.is_connected():
            break
    base = _weighted(rng, kept, lo, hi)
    heavy = 2 * apsp(base).max_entry()
    weights = base.weights
    weights.update({e: heavy for e in removed})
    return WeightedGraph(cube, weights)


# --- mutants ------------------------------------------------------------------------

MUTATIONS = ("entry-bump", "swap-pair", "scale-row")


def mutate(
    D: PredistanceMatrix,
    kind: str,
    *,
    seed: int = 0,
    pair: tuple[int, int] | None = None,
    delta=None,
    other: tuple[int, int] | None = None,
    row: int | None = None,
    factor=None,
) -> PredistanceMatrix:
    """Deliberately corrupted copy of ``D``.

    ``entry-bump`` adds ``delta`` to one symmetric pair, ``swap-pair``
    exchanges the entries of two pairs, ``scale-row`` multiplies row and
    column ``row`` by ``factor``. Unspecified choices are drawn from ``seed``.
    The result is still a predistance matrix but need not satisfy the
    triangle inequalities.
    """
    rng = np.random.default_rng(seed)
    m = D.m
    d = D.rows()
    all_pairs = list(combinations(range(m), 2))

    def pick():
        return all_pairs[int(rng.integers(len(all_pairs)))]

    if kind == "entry-bump":
        i, j = pair if pair is not None else pick()
        if delta is None:
            delta = Fraction(int(rng.integers(-4, 5)) or 1, 4) * d[i][j]
        delta = to_fraction(delta)
        if d[i][j] + delta <= 0:
            delta = -d[i][j] / 2
        d[i][j] = d[j][i] = d[i][j] + delta
    elif kind == "swap-pair":
        i, j = pair if pair is not None else pick()
        if other is None:
            other = pick()
            while other == (i, j) and len(all_pairs) > 1:
                other = pick()
        k, l = other
        d[i][j], d[k][l] = d[k][l], d[i][j]
        d[j][i], d[l][k] = d[i][j], d[k][l]
    elif kind == "scale-row":
        i = int(rng.integers(m)) if row is None else row
        q = to_fraction(factor) if factor is not None else Fraction(int(rng.choice([1, 3, 5, 7])), 4)
        if q == 1:
            q = Fraction(3, 2)
        if q <= 0:
            raise ValueError("scale factor must be positive")
        for k in range(m):
            if k != i:
                d[i][k] = d[k][i] = d[i][k] * q
    else:
        raise ValueError(f"unknown mutation {kind!r}; expected one of {MUTATIONS}")
    return PredistanceMatrix(d)


# --- fixtures -----------------------------------------------------------------------

def dump_fixture(name: str, D: PredistanceMatrix, expected: dict, out_dir) -> tuple[str, str]:
    """Write ``<name>.matrix.txt`` and ``<name>.expected.json`` into ``out_dir``."""
    os.makedirs(out_dir, exist_ok=True)
    mpath = os.path.join(out_dir, f"{name}.matrix.txt")
    jpath = os.path.join(out_dir, f"{name}.expected.json")
    with open(mpath, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(D))
    with open(jpath, "w", encoding="utf-8") as fh:
        json.dump(expected, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return mpath, jpath
