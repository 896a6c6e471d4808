"""Simple undirected graphs and the structural tests used by the recognizers.

Vertices are ``0 .. order-1``. Edges are stored as sorted pairs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .checks import PASS, Check
from .errors import RangeError


class Graph:
    """Immutable simple graph."""

    __slots__ = ("_adj",)

    def __init__(self, order: int, edges=()):
        if order < 1:
            raise ValueError("a graph needs at least one vertex")
        adj = [set() for _ in range(order)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) outside 0..{order - 1}")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(a) for a in adj)

    @classmethod
    def from_adjacency(cls, mask) -> "Graph":
        mask = np.asarray(mask, dtype=bool)
        pairs = np.argwhere(np.triu(mask, 1))
        return cls(mask.shape[0], pairs.tolist())

    @property
    def order(self) -> int:
        return len(self._adj)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in sorted(self._adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def adjacency_matrix(self, dtype=bool) -> np.ndarray:
        A = np.zeros((self.order, self.order), dtype=dtype)
        for u, v in self.edges():
            A[u, v] = A[v, u] = 1
        return A

    def bfs_distances(self, x: int) -> list[int]:
        """Edge-count distances from ``x``; -1 marks unreachable vertices."""
        dist = [-1] * self.order
        dist[x] = 0
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_connected(self) -> bool:
        return min(self.bfs_distances(0)) >= 0

    def without_edge(self, u: int, v: int) -> "Graph":
        e = (min(u, v), max(u, v))
        return Graph(self.order, [f for f in self.edges() if f != e])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self):
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edges()})"


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class WeightedGraph:
    """Graph with a positive weight on every edge.

    Weights are exact ``Fraction`` values unless floats are passed in.
    """

    __slots__ = ("graph", "_w")

    def __init__(self, graph: Graph, weights):
        w = {}
        for (u, v), x in dict(weights).items():
            key = _edge_key(u, v)
            if not graph.has_edge(*key):
                raise ValueError(f"weight given for non-edge {key}")
            x = x if isinstance(x, float) else Fraction(x)
            if not x > 0:
                raise ValueError(f"edge {key} has non-positive weight {x}")
            w[key] = x
        missing = [e for e in graph.edges() if e not in w]
        if missing:
            raise ValueError(f"edges without weight: {missing[:5]}")
        self.graph = graph
        self._w = w

    @classmethod
    def from_edges(cls, order: int, triples) -> "WeightedGraph":
        triples = list(triples)
        g = Graph(order, [(u, v) for u, v, _ in triples])
        return cls(g, {(u, v): w for u, v, w in triples})

    @property
    def order(self) -> int:
        return self.graph.order

    def weight(self, u: int, v: int):
        return self._w[_edge_key(u, v)]

    @property
    def weights(self) -> dict:
        return dict(self._w)

    def edges(self) -> list[tuple[int, int, object]]:
        return [(u, v, self._w[(u, v)]) for u, v in self.graph.edges()]

    def without_edge(self, u: int, v: int) -> "WeightedGraph":
        key = _edge_key(u, v)
        g = self.graph.without_edge(*key)
        return WeightedGraph(g, {e: x for e, x in self._w.items() if e != key})

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.graph == other.graph and self._w == other._w

    def __repr__(self) -> str:
        return f"WeightedGraph(order={self.order}, edges={self.edges()})"


@dataclass(frozen=True)
class Embedding:
    """Bijection from source vertices onto the vertices of a target graph.

    ``images[i]`` is the target vertex of source vertex ``i`` and ``labels[i]``
    its printable name (``"010"`` for hypercubes, ``"v3"``/``"vbar2"`` for Petersen).
    """

    images: tuple[int, ...]
    labels: tuple[str, ...]

    def inverse(self) -> dict[int, int]:
        return {t: s for s, t in enumerate(self.images)}

    def is_bijective(self, target_order: int) -> bool:
        return sorted(self.images) == list(range(target_order))

    def maps_edges(self, source: Graph, target: Graph) -> bool:
        return all(target.has_edge(self.images[u], self.images[v]) for u, v in source.edges())


# --- fixed graphs -----------------------------------------------------------

def hypercube(n: int) -> Graph:
    """Q_n; vertex ``v`` is the n-bit string of ``v`` (most significant bit first)."""
    if not 1 <= n <= 20:
        raise RangeError(f"hypercube dimension must be in 1..20, got {n}")
    size = 1 << n
    return Graph(size, [(v, v ^ (1 << b)) for v in range(size) for b in range(n) if v < v ^ (1 << b)])


def hypercube_label(v: int, n: int) -> str:
    return format(v, f"0{n}b")


PETERSEN_LABELS = tuple([f"v{j}" for j in range(1, 6)] + [f"vbar{j}" for j in range(1, 6)])


def petersen() -> Graph:
    """Outer 5-cycle on 0..4, spokes j -> j+5, inner pentagram on 5..9."""
    outer = [(j, (j + 1) % 5) for j in range(5)]
    spokes = [(j, j + 5) for j in range(5)]
    inner = [(j + 5, k + 5) for j in range(5) for k in range(j + 1, 5) if k - j in (2, 3)]
    return Graph(10, outer + spokes + inner)


def counterexample_graph() -> Graph:
    """Bipartite 4-regular graph on 16 vertices that is not Q_4.

    ``y1..y8`` are vertices 0..7 and ``z1..z8`` are 8..15.
    """
    y = lambda i: i - 1  # noqa: E731
    z = lambda i: i + 7  # noqa: E731
    edges = [(y(a), z(b)) for a in (1, 2) for b in (1, 2, 3, 4)]
    edges += [(z(a), y(b)) for a in (7, 8) for b in (5, 6, 7, 8)]
    edges += [(y(3), z(b)) for b in (1, 2, 5, 6)]
    edges += [(y(4), z(b)) for b in (3, 4, 5, 6)]
    edges += [(z(5), y(5)), (z(5), y(6)), (z(6), y(7)), (z(6), y(8))]
    edges += [(z(i), y(i + 4)) for i in (1, 2, 3, 4)]
    return Graph(16, edges)


def cycle_graph(m: int) -> Graph:
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


# --- predicates ---------------------------------------------------------------

def common_neighbor_counts(G: Graph) -> np.ndarray:
    A = G.adjacency_matrix(np.float64)
    # counts never exceed the order, exact in float64
    return (A @ A).astype(np.int64)


def is_zero_two_graph(G: Graph) -> Check:
    """Every pair of distinct vertices has 0 or 2 common neighbours.

    Witness: the smallest offending pair, ``values = (count,)``.
    """
    C = common_neighbor_counts(G)
    bad = np.triu((C != 0) & (C != 2), 1)
    if bad.any():
        x, y = (int(t) for t in np.argwhere(bad)[0])
        return Check(False, (x, y), (int(C[x, y]),))
    return PASS


def is_bipartite(G: Graph) -> Check:
    """2-colour ``G``. On success ``detail`` is the colouring, on failure
    ``witness`` is an odd cycle."""
    color = [-1] * G.order
    parent = [-1] * G.order
    for s in range(G.order):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(G.neighbors(u)):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return Check(False, _odd_cycle(parent, u, w))
    return Check(True, detail=tuple(color))


def _odd_cycle(parent: list[int], u: int, w: int) -> tuple[int, ...]:
    def chain(x):
        out = [x]
        while parent[x] >= 0:
            x = parent[x]
            out.append(x)
        return out

    cu, cw = chain(u), chain(w)
    on_w = set(cw)
    top = next(x for x in cu if x in on_w)
    left = cu[: cu.index(top) + 1]
    right = cw[: cw.index(top)]
    return tuple(left[::-1] + right)


def geodesic_counts(G: Graph, x: int) -> tuple[list[int], list[int]]:
    """Distances from ``x`` and the number of geodesics from ``x`` to each vertex."""
    dist = [-1] * G.order
    count = [0] * G.order
    dist[x] = 0
    count[x] = 1
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for w in G.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
            if dist[w] == dist[u] + 1:
                count[w] += count[u]
    return dist, count


def count_geodesics(G: Graph, x: int, y: int) -> int:
    return geodesic_counts(G, x)[1][y]


def is_hypercube(G: Graph) -> Check:
    """Mulder's test: connected (0,2)-graph, d-regular, with 2^d vertices.

    ``values`` on an order mismatch are ``(order, 2**d)``.
    """
    if not G.is_connected():
        far = G.bfs_distances(0).index(-1)
        return Check(False, (0, far), ("disconnected",))
    zt = is_zero_two_graph(G)
    if not zt:
        return zt
    degs = G.degrees()
    d = degs[0]
    for v, dv in enumerate(degs):
        if dv != d:
            return Check(False, (v,), (dv, d))
    if G.order != 1 << d:
        return Check(False, (), (G.order, 1 << d))
    return PASS


def find_cycle(G: Graph, length: int) -> tuple[int, ...] | None:
    """Lexicographically smallest cycle with ``length`` vertices, in canonical
    form (starts at its minimum vertex, second vertex < last vertex)."""
    return next(cycles(G, length), None)


def cycles(G: Graph, length: int):
    """Every cycle with ``length`` vertices once, in canonical form and lexicographic order."""
    for start in range(G.order):
        path = [start]
        used = {start}

        def extend():
            u = path[-1]
            if len(path) == length:
                if G.has_edge(u, start) and path[1] < path[-1]:
                    yield tuple(path)
                return
            for w in sorted(G.neighbors(u)):
                if w > start and w not in used:
                    path.append(w)
                    used.add(w)
                    yield from extend()
                    path.pop()
                    used.discard(w)

        yield from extend()


def girth(G: Graph) -> int | None:
    """Length of a shortest cycle, ``None`` for forests."""
    best = None
    for s in range(G.order):
        dist = [-1] * G.order
        parent = [-1] * G.order
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.neighbors(u):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    c = dist[u] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best


# --- embeddings -----------------------------------------------------------------

def hypercube_embedding(G: Graph, n: int) -> Embedding | None:
    """Coordinates for a graph believed to be Q_n, or ``None`` if it is not.

    Neighbours of vertex 0 get the unit vectors; every farther vertex gets the
    bitwise OR of the labels of its neighbours one layer closer to 0.
    """
    if G.order != 1 << n:
        return None
    dist = G.bfs_distances(0)
    if min(dist) < 0:
        return None
    label = [0] * G.order
    order = sorted(range(G.order), key=lambda v: dist[v])
    first = sorted(G.neighbors(0))
    if len(first) != n:
        return None
    for b, v in enumerate(first):
        label[v] = 1 << (n - 1 - b)
    for v in order:
        if dist[v] >= 2:
            for u in G.neighbors(v):
                if dist[u] == dist[v] - 1:
                    label[v] |= label[u]
    emb = Embedding(tuple(label), tuple(hypercube_label(x, n) for x in label))
    if not emb.is_bijective(G.order):
        return None
    if not all(bin(label[u] ^ label[v]).count("1") == 1 for u, v in G.edges()):
        return None
    if G.edge_count() != n << (n - 1):
        return None
    return emb


def embed_into_q3(S: Graph) -> Embedding | None:
    """Map the 8 vertices of ``S`` onto {0,1}^3 so every edge becomes a cube edge.

    Backtracking: vertices in decreasing-degree order, candidate images
    restricted to cube neighbours of the images of already-placed neighbours.
    Q_3 is vertex-transitive, so the first vertex is pinned to ``000``.
    """
    if S.order != 8 or max(S.degrees()) > 3:
        return None
    order = sorted(range(8), key=lambda v: (-S.degree(v), v))
    image = [-1] * 8
    used = [False] * 8

    def place(t: int) -> bool:
        if t == 8:
            return True
        v = order[t]
        placed = [image[u] for u in S.neighbors(v) if image[u] >= 0]
        if t == 0:
            candidates = [0]
        elif placed:
            candidates = [placed[0] ^ (1 << b) for b in range(3)]
        else:
            candidates = range(8)
        for c in sorted(candidates):
            if used[c]:
                continue
            if any(bin(c ^ p).count("1") != 1 for p in placed):
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
    emb = Embedding(tuple(image), tuple(hypercube_label(c, 3) for c in image))
    assert emb.maps_edges(S, hypercube(3)), "embed_into_q3 produced a non-edge"
    return emb
