"""Exact distance matrices and the matrix-level predicates.

Entries are kept as integers over one common denominator (``scale``) so that
every comparison is an exact integer comparison that numpy can vectorize.
Small instances use ``int64``; when the scaled numerators get too large the
array silently switches to ``object`` dtype holding Python ints.

Float mode (``eps`` set) stores ``float64`` entries and treats two numbers as
equal when they differ by at most ``eps``.
"""
from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .checks import PASS, Check
from .errors import DisconnectedSkeleton, NotATree, ShapeError, TriangleViolation
from .graph import Graph

DEFAULT_EPS = 1e-9
THREADS_ENV = "METRIC_RECOGNIZER_THREADS"

# sums of two entries must stay inside int64
_INT64_LIMIT = 2**61
# elements per tower block handed to numpy in one go
_BLOCK_ELEMENTS = 1 << 22


def to_fraction(x) -> Fraction:
    """Exact rational value of ``x``.

    Strings may be integers, decimals (``"1.25"``) or ``"p/q"``. Floats are
    read through their shortest decimal repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise ValueError(f"non-finite entry {x!r}")
        return Fraction(repr(float(x)))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {type(x).__name__} as a rational")


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    n = int(raw)
    return max(n, 0)


def _scale_fractions(rows: list[list[Fraction]]) -> tuple[np.ndarray, int]:
    den = 1
    for row in rows:
        for f in row:
            den = math.lcm(den, f.denominator)
    ints = [[f.numerator * (den // f.denominator) for f in row] for row in rows]
    big = max((abs(v) for row in ints for v in row), default=0)
    if big < _INT64_LIMIT:
        return np.array(ints, dtype=np.int64), den
    arr = np.empty((len(ints), len(ints[0]) if ints else 0), dtype=object)
    for i, row in enumerate(ints):
        for j, v in enumerate(row):
            arr[i, j] = v
    return arr, den


def _narrow(values: np.ndarray) -> np.ndarray:
    """Move an object array of Python ints back to int64 when it fits."""
    if values.dtype == object and values.size:
        big = max(abs(int(v)) for v in values.flat)
        if big < _INT64_LIMIT:
            return values.astype(np.int64)
    return values


class PredistanceMatrix:
    """Square symmetric matrix, zero diagonal, positive off-diagonal entries.

    Parameters
    ----------
    entries : nested sequence, ndarray or PredistanceMatrix
        Anything ``to_fraction`` understands (exact mode) or floats (float mode).
    eps : float, optional
        Switches to float mode with absolute tolerance ``eps``.
    """

    __slots__ = ("_values", "_scale", "_eps")

    def __init__(self, entries, *, eps: float | None = None):
        if isinstance(entries, PredistanceMatrix):
            if eps is None and entries.eps is None:
                values, scale = entries._values, entries._scale
            else:
                eps = entries.eps if eps is None else eps
                values, scale = entries.as_float_array(), 1
        else:
            rows = _as_rows(entries)
            if eps is None:
                values, scale = _scale_fractions([[to_fraction(x) for x in row] for row in rows])
            else:
                values = np.array([[float(x) if not isinstance(x, str) else float(to_fraction(x))
                                    for x in row] for row in rows], dtype=np.float64)
                scale = 1
        if eps is not None and not eps > 0:
            raise ValueError("eps must be positive")
        values = values.copy()
        values.setflags(write=False)
        self._values = values
        self._scale = scale
        self._eps = None if eps is None else float(eps)
        self._check_well_formed()

    @classmethod
    def _trusted(cls, values: np.ndarray, scale: int = 1, eps: float | None = None):
        obj = cls.__new__(cls)
        values = values if values.dtype == np.float64 else _narrow(values)
        values.setflags(write=False)
        obj._values = values
        obj._scale = int(scale)
        obj._eps = eps
        return obj

    def _check_well_formed(self) -> None:
        v = self._values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ShapeError(f"matrix must be square, got shape {v.shape}")
        m = v.shape[0]
        if m < 2:
            raise ShapeError(f"matrix order must be at least 2, got {m}")
        eps = self._eps or 0
        diag = np.nonzero(np.abs(np.diagonal(v)) > eps)[0] if eps else np.nonzero(np.diagonal(v) != 0)[0]
        if diag.size:
            i = int(diag[0])
            raise ShapeError(f"diagonal entry ({i + 1}, {i + 1}) is {self[i, i]}, not 0", (i, i))
        asym = np.argwhere(np.abs(v - v.T) > eps) if eps else np.argwhere(v != v.T)
        if asym.size:
            i, j = (int(t) for t in asym[0])
            raise ShapeError(
                f"matrix is not symmetric at ({i + 1}, {j + 1}): {self[i, j]} != {self[j, i]}", (i, j)
            )
        off = ~np.eye(m, dtype=bool)
        bad = np.argwhere(off & (v <= 0))
        if bad.size:
            i, j = (int(t) for t in bad[0])
            raise ShapeError(f"off-diagonal entry ({i + 1}, {j + 1}) is {self[i, j]}, not positive", (i, j))

    @property
    def m(self) -> int:
        return self._values.shape[0]

    @property
    def eps(self) -> float | None:
        return self._eps

    @property
    def exact(self) -> bool:
        return self._eps is None

    @property
    def values(self) -> np.ndarray:
        """Read-only internal array: ``entries * scale`` (exact) or floats."""
        return self._values

    @property
    def scale(self) -> int:
        return self._scale

    def _out(self, v):
        if self._eps is not None:
            return float(v)
        return Fraction(int(v), self._scale)

    def __getitem__(self, ij):
        i, j = ij
        return self._out(self._values[i, j])

    def __len__(self) -> int:
        return self.m

    def rows(self) -> list[list]:
        return [[self._out(v) for v in row] for row in self._values]

    def as_float_array(self) -> np.ndarray:
        if self._eps is not None:
            return np.array(self._values, dtype=np.float64)
        return np.array([[int(v) / self._scale for v in row] for row in self._values])

    def max_entry(self):
        return self._out(self._values.max())

    def scaled(self, q) -> "PredistanceMatrix":
        """Copy with every entry multiplied by the positive rational ``q``."""
        if self._eps is not None:
            q = float(q)
            if q <= 0:
                raise ValueError("scale factor must be positive")
            return type(self)._trusted(self._values * q, 1, self._eps)
        q = to_fraction(q)
        if q <= 0:
            raise ValueError("scale factor must be positive")
        vals = self._values.astype(object) * q.numerator
        return type(self)._trusted(vals, self._scale * q.denominator, None)

    def __eq__(self, other):
        if not isinstance(other, PredistanceMatrix):
            return NotImplemented
        if self.m != other.m or self.exact != other.exact:
            return False
        if self.exact:
            a = self._values.astype(object) * other._scale
            b = other._values.astype(object) * self._scale
            return bool(np.all(a == b))
        return bool(np.array_equal(self._values, other._values))

    __hash__ = None

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows())
        mode = "" if self.exact else f", eps={self._eps}"
        return f"{type(self).__name__}([{body}]{mode})"


class DistanceMatrix(PredistanceMatrix):
    """Predistance matrix that satisfies every triangle inequality.

    Constructing one directly validates; ``validate`` converts an existing
    predistance matrix.
    """

    __slots__ = ()

    def __init__(self, entries, *, eps: float | None = None):
        super().__init__(entries, eps=eps)
        _check_triangles(self)


def _as_rows(entries) -> list[list]:
    if isinstance(entries, np.ndarray):
        if entries.ndim != 2:
            raise ShapeError(f"matrix must be 2-dimensional, got {entries.ndim}")
        return entries.tolist()
    try:
        rows = [list(r) for r in entries]
    except TypeError as exc:
        raise ShapeError("matrix must be a sequence of rows") from exc
    m = len(rows)
    for i, r in enumerate(rows):
        if len(r) != m:
            raise ShapeError(f"row {i + 1} has {len(r)} entries, expected {m}", (i,))
    return rows


def _row_blocks(m: int):
    b = max(1, _BLOCK_ELEMENTS // (m * m))
    return [range(s, min(s + b, m)) for s in range(0, m, b)]


def _map_blocks(fn, m: int):
    blocks = _row_blocks(m)
    workers = min(worker_count(), len(blocks))
    if workers <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, blocks))


def _check_triangles(P: PredistanceMatrix) -> None:
    v = P.values
    eps = P.eps

    def first_violation(rows: range):
        sl = slice(rows.start, rows.stop)
        # s[i, k, j] = D[i, k] + D[k, j]
        s = v[sl, :, None] + v[None, :, :]
        target = v[sl, None, :]
        bad = (s + eps < target) if eps is not None else (s < target)
        if not bad.any():
            return None
        i, k, j = (int(t) for t in np.argwhere(bad)[0])
        return rows.start + i, k, j

    for hit in _map_blocks(first_violation, P.m):
        if hit is not None:
            i, k, j = hit
            raise TriangleViolation(i, k, j, P[i, j], P[i, k], P[k, j])


def validate(P) -> DistanceMatrix:
    """Return ``P`` as a ``DistanceMatrix`` or raise.

    Raises
    ------
    ShapeError
        ``P`` is not a predistance matrix.
    TriangleViolation
        Lexicographically smallest ``(i, k, j)`` with ``D[i,j] > D[i,k] + D[k,j]``.
    """
    if isinstance(P, DistanceMatrix):
        return P
    if not isinstance(P, PredistanceMatrix):
        P = PredistanceMatrix(P)
    _check_triangles(P)
    return DistanceMatrix._trusted(P.values, P.scale, P.eps)


class TowerMatrix:
    """The m x m x m array ``T[i, j, l] = D[i, l] + D[l, j]``, evaluated lazily."""

    def __init__(self, D: DistanceMatrix):
        self.D = D

    @property
    def m(self) -> int:
        return self.D.m

    def value(self, i: int, j: int, l: int):
        return self.D[i, l] + self.D[l, j]

    def row(self, i: int, j: int) -> list:
        return [self.value(i, j, l) for l in range(self.m)]

    def block(self, rows: range) -> np.ndarray:
        """Scaled values for rows ``i in rows``, shape ``(len(rows), m, m)``."""
        v = self.D.values
        # D is symmetric, so D[l, j] == v[j, l]
        return v[rows.start:rows.stop, None, :] + v[None, :, :]

    def to_array(self) -> np.ndarray:
        return self.block(range(0, self.m))


def tower(D: DistanceMatrix) -> TowerMatrix:
    return TowerMatrix(D)


@dataclass(frozen=True, eq=False)
class EntryClassification:
    """Indecomposability of every entry.

    ``mask[i, j]`` is true iff ``D[i, j]`` is indecomposable; ``multiplicity[i, j]``
    counts the ``l`` attaining the minimum of tower row ``(i, j)``.
    """

    mask: np.ndarray
    multiplicity: np.ndarray

    @property
    def m(self) -> int:
        return self.mask.shape[0]

    @property
    def r(self) -> int:
        """Number of indecomposable pairs."""
        return int(np.count_nonzero(np.triu(self.mask, 1)))

    @property
    def degrees(self) -> np.ndarray:
        return self.mask.sum(axis=1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(np.triu(self.mask, 1))]

    def neighbors(self, x: int) -> frozenset[int]:
        return frozenset(int(y) for y in np.nonzero(self.mask[x])[0])


def classify(D: DistanceMatrix) -> EntryClassification:
    """Flag each indecomposable entry from the tower matrix in O(m^3).

    An entry is indecomposable exactly when the minimum of its tower row is
    attained only twice (at ``l = i`` and ``l = j``). Rows are processed in
    blocks, optionally on several threads; each block owns its output rows so
    the result does not depend on scheduling.
    """
    m = D.m
    T = TowerMatrix(D)
    mult = np.empty((m, m), dtype=np.int32)
    eps = D.eps

    def run(rows: range):
        t = T.block(rows)
        lo = t.min(axis=2, keepdims=True)
        hit = (t <= lo + eps) if eps is not None else (t == lo)
        mult[rows.start:rows.stop] = hit.sum(axis=2)

    _map_blocks(run, m)
    mask = mult == 2
    np.fill_diagonal(mask, False)
    mask.setflags(write=False)
    mult.setflags(write=False)
    return EntryClassification(mask, mult)


def skeleton(D: DistanceMatrix, C: EntryClassification | None = None) -> Graph:
    """Graph on the matrix indices whose edges are the indecomposable pairs."""
    C = classify(D) if C is None else C
    return Graph.from_adjacency(C.mask)


@dataclass(frozen=True)
class LayerPartition:
    base: int
    layers: tuple[frozenset[int], ...]

    def layer_of(self, y: int) -> int:
        for t, layer in enumerate(self.layers):
            if y in layer:
                return t
        raise KeyError(y)

    def __getitem__(self, t: int) -> frozenset[int]:
        return self.layers[t] if 0 <= t < len(self.layers) else frozenset()


def layer_partition(D: DistanceMatrix, C: EntryClassification | None, x: int) -> LayerPartition:
    """Breadth-first layers ``X_0(x), X_1(x), ...`` of the skeleton graph."""
    C = classify(D) if C is None else C
    G = Graph.from_adjacency(C.mask)
    dist = G.bfs_distances(x)
    if min(dist) < 0:
        missing = dist.index(-1)
        raise DisconnectedSkeleton(f"vertex {missing + 1} is unreachable from {x + 1}")
    layers = [set() for _ in range(max(dist) + 1)]
    for y, t in enumerate(dist):
        layers[t].add(y)
    return LayerPartition(x, tuple(frozenset(s) for s in layers))


def four_point_condition(D: DistanceMatrix) -> Check:
    """For all distinct i<j<k<h the largest of the three pair sums is attained twice.

    The failure witness is the smallest ``(i, j, k, h)``; ``values`` are the sums
    ``(D_ij + D_kh, D_ik + D_jh, D_ih + D_jk)``.
    """
    m = D.m
    if m < 4:
        return PASS
    v = D.values
    eps = D.eps
    idx = np.arange(m)
    region = (idx[:, None] < idx[None, :])
    for i in range(m - 3):
        for j in range(i + 1, m - 2):
            s1 = v[i, j] + v  # [k, h] -> D_ij + D_kh
            s2 = v[i][:, None] + v[j][None, :]  # D_ik + D_jh
            s3 = v[j][:, None] + v[i][None, :]  # D_jk + D_ih
            top = np.maximum(np.maximum(s1, s2), s3)
            if eps is None:
                cnt = (s1 == top).astype(np.int8) + (s2 == top) + (s3 == top)
            else:
                cnt = (s1 >= top - eps).astype(np.int8) + (s2 >= top - eps) + (s3 >= top - eps)
            bad = (cnt < 2) & region
            bad[: j + 1, :] = False
            if bad.any():
                k, h = (int(t) for t in np.argwhere(bad)[0])
                return Check(False, (i, j, k, h), (D._out(s1[k, h]), D._out(s2[k, h]), D._out(s3[k, h])))
    return PASS


def _between_row(D: DistanceMatrix, a: int) -> np.ndarray:
    """``out[b, y]`` is true iff ``D[a, y] + D[y, b] == D[a, b]``."""
    v = D.values
    s = v[a][None, :] + v
    if D.eps is None:
        return s == v[a][:, None]
    return np.abs(s - v[a][:, None]) <= D.eps


def is_median(D: DistanceMatrix) -> Check:
    """Every triple of distinct indices has exactly one median.

    A median of ``{a, b, c}`` is a ``y`` lying on a geodesic between each two
    of them. Witness: the smallest triple with zero or several medians, with
    ``values = (number_of_medians,)``.
    """
    m = D.m
    if m < 3:
        return PASS
    rows: dict[int, np.ndarray] = {}

    def between(a):
        if a not in rows:
            rows[a] = _between_row(D, a)
        return rows[a]

    for a in range(m - 2):
        Ba = between(a)
        for b in range(a + 1, m - 1):
            Bb = between(b)
            cs = slice(b + 1, m)
            cnt = (Ba[b][None, :] & Ba[cs] & Bb[cs]).sum(axis=1)
            bad = np.nonzero(cnt != 1)[0]
            if bad.size:
                c = b + 1 + int(bad[0])
                return Check(False, (a, b, c), (int(cnt[bad[0]]),))
        rows.pop(a, None)
    return PASS


@dataclass(frozen=True)
class PathAnalysis:
    """Leaf-to-leaf path structure of a skeleton tree.

    ``lengths`` is the sorted multiset of maximal path lengths (edge counts)
    and ``degree3`` the vertices of degree three. ``degree3_separation`` is
    the tree distance between the first two of them (``None`` with fewer than
    two). ``degree3_compatible`` holds when there are at most two such
    vertices and, if two, they are an odd distance apart; together with an odd
    maximal path this is exactly what a 7-edge tree needs to sit inside Q_3.
    """

    lengths: tuple[int, ...]
    has_odd: bool
    degree3: tuple[int, ...]
    degree3_separation: int | None
    degree3_compatible: bool

    @property
    def degree3_adjacent(self) -> bool | None:
        return None if self.degree3_separation is None else self.degree3_separation == 1

    @property
    def degree3_pair(self) -> tuple[int, int] | None:
        return None if len(self.degree3) < 2 else (self.degree3[0], self.degree3[1])


def indecomposable_paths(D: DistanceMatrix, C: EntryClassification | None = None) -> PathAnalysis:
    C = classify(D) if C is None else C
    return tree_path_analysis(Graph.from_adjacency(C.mask))


def tree_path_analysis(T: Graph) -> PathAnalysis:
    if T.edge_count() != T.order - 1 or not T.is_connected():
        raise NotATree(f"skeleton has {T.edge_count()} edges on {T.order} vertices and is not a tree")
    leaves = [v for v in range(T.order) if T.degree(v) == 1]
    lengths = []
    for a in leaves:
        dist = T.bfs_distances(a)
        lengths.extend(dist[b] for b in leaves if b > a)
    lengths.sort()
    deg3 = tuple(v for v in range(T.order) if T.degree(v) == 3)
    separation = None
    if len(deg3) >= 2:
        separation = T.bfs_distances(deg3[0])[deg3[1]]
    compatible = len(deg3) < 2 or (len(deg3) == 2 and separation % 2 == 1)
    return PathAnalysis(tuple(lengths), any(x % 2 for x in lengths), deg3, separation, compatible)
