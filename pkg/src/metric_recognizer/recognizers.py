"""Recognition of hypercube, Q_3, Petersen and tree distance matrices.

Every recognizer takes a distance matrix (or anything ``validate`` accepts)
and returns a ``Verdict``. An accepted verdict carries a weighted graph on the
input indices together with the embedding onto the target graph, and that
graph has already been checked to reproduce the input matrix exactly. A
rejected verdict names the failed condition and the indices that show it.

Order preconditions (matrix order not matching the family) raise
``OrderError`` subclasses. Triangle violations are reported as a rejection with
condition ``"triangle"``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial

import numpy as np

from .errors import (
    OrderNot8,
    OrderNot10,
    OrderNotPowerOfTwo,
    TriangleViolation,
    VerificationFailed,
)
from .graph import (
    PETERSEN_LABELS,
    Embedding,
    Graph,
    WeightedGraph,
    common_neighbor_counts,
    cycles,
    embed_into_q3,
    find_cycle,
    geodesic_counts,
    hypercube,
    hypercube_embedding,
    is_bipartite,
    is_zero_two_graph,
    petersen,
)
from .matrix import (
    DistanceMatrix,
    EntryClassification,
    PredistanceMatrix,
    classify,
    four_point_condition,
    is_median,
    tree_path_analysis,
    validate,
)
from .weighted import apsp

HYPERCUBE = "hypercube-all-useful"
Q3_GENERAL = "q3-general"
PETERSEN = "petersen"
TREE = "tree"
FAMILIES = (HYPERCUBE, Q3_GENERAL, PETERSEN, TREE)

CONDITIONS = (
    "triangle",
    "cubici0.a", "cubici0.b",
    "cubici.a", "cubici.b",
    "q3.a", "q3.b",
    "q3.r7.fourpoint", "q3.r7.median", "q3.r7.oddpath", "q3.r7.deg3adjacency",
    "q3.r8_11.k_range", "q3.r8_11.completion",
    "q3.r12.zerotwo",
    "petersen.a", "petersen.b", "petersen.c",
    "tree.fourpoint", "tree.median",
)


@dataclass(frozen=True)
class Rejection:
    condition: str
    witness: tuple[int, ...] = ()
    values: tuple = ()


@dataclass(frozen=True)
class Certificate:
    embedding: Embedding
    graph: WeightedGraph


@dataclass(frozen=True)
class Verdict:
    """Result of one recognizer.

    ``trail`` lists ``(condition, passed)`` in the order conditions were
    checked; ``cross_checks`` holds auxiliary facts such as ``r`` or layer sizes.
    """

    family: str
    accepted: bool
    certificate: Certificate | None = None
    rejection: Rejection | None = None
    n: int | None = None
    r: int | None = None
    trail: tuple[tuple[str, bool], ...] = ()
    cross_checks: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        """JSON-ready dict; indices are 1-based and rationals are ``p/q`` strings."""
        out = {"family": self.family, "accepted": self.accepted}
        if self.n is not None:
            out["n"] = self.n
        if self.r is not None:
            out["r"] = self.r
        if self.certificate is not None:
            out["certificate"] = {
                "embedding": list(self.certificate.embedding.labels),
                "edges": [
                    {"u": u + 1, "v": v + 1, "w": _value_str(w)}
                    for u, v, w in self.certificate.graph.edges()
                ],
            }
        if self.rejection is not None:
            out["rejection"] = {
                "condition": self.rejection.condition,
                "witness": [i + 1 for i in self.rejection.witness],
                "values": [_value_str(x) for x in self.rejection.values],
            }
        return out


def _value_str(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


class _Trail:
    def __init__(self, family: str):
        self.family = family
        self.steps: list[tuple[str, bool]] = []
        self.cross: dict = {}
        self.n = None
        self.r = None

    def ok(self, condition: str) -> None:
        self.steps.append((condition, True))

    def reject(self, condition: str, witness=(), values=()) -> Verdict:
        self.steps.append((condition, False))
        return Verdict(
            self.family, False, None,
            Rejection(condition, tuple(int(i) for i in witness), tuple(values)),
            self.n, self.r, tuple(self.steps), self.cross,
        )

    def accept(self, embedding: Embedding, graph: WeightedGraph) -> Verdict:
        return Verdict(
            self.family, True, Certificate(embedding, graph), None,
            self.n, self.r, tuple(self.steps), self.cross,
        )


def _coerce(D) -> PredistanceMatrix:
    return D if isinstance(D, PredistanceMatrix) else PredistanceMatrix(D)


def _validated(P: PredistanceMatrix, trail: _Trail):
    """Return ``(DistanceMatrix, None)`` or ``(None, triangle rejection)``."""
    try:
        D = validate(P)
    except TriangleViolation as exc:
        return None, trail.reject("triangle", exc.indices, exc.values)
    trail.ok("triangle")
    return D, None


def _log2(m: int) -> int | None:
    if m >= 2 and m & (m - 1) == 0:
        return m.bit_length() - 1
    return None


def _target_graph(family: str, m: int) -> Graph:
    if family == HYPERCUBE:
        n = _log2(m)
        if n is None:
            raise OrderNotPowerOfTwo(m)
        return hypercube(n)
    if family == Q3_GENERAL:
        return hypercube(3)
    if family == PETERSEN:
        return petersen()
    raise ValueError(f"no fixed target graph for family {family!r}")


def reconstruct_and_verify(
    D: DistanceMatrix,
    family: str,
    embedding: Embedding,
    extra_edge_weight=None,
    C: EntryClassification | None = None,
    target: Graph | None = None,
) -> WeightedGraph:
    """Weighted copy of the family's target graph on the input indices.

    Target edges whose endpoints form an indecomposable entry get that entry
    as weight; any other target edge gets ``extra_edge_weight`` (Q_3 general
    case, twice the largest entry). Shortest paths of the result are compared
    with ``D`` entry by entry before returning.

    Raises
    ------
    VerificationFailed
        The reconstruction does not reproduce ``D``.
    """
    C = classify(D) if C is None else C
    if target is None:
        target = _target_graph(family, D.m)
    inv = embedding.inverse()
    weights = {}
    for a, b in target.edges():
        i, j = inv[a], inv[b]
        if C.mask[i, j]:
            weights[(i, j)] = D[i, j]
        elif extra_edge_weight is not None:
            weights[(i, j)] = extra_edge_weight
        else:
            raise VerificationFailed(i, j, "indecomposable entry", D[i, j])
    source = Graph(D.m, weights.keys())
    for i, j in C.pairs():
        if not source.has_edge(i, j):
            raise VerificationFailed(i, j, D[i, j], "no edge in target")
    W = WeightedGraph(source, weights)
    R = apsp(W, eps=D.eps)
    if D.exact:
        a = R.values.astype(object) * D.scale
        b = D.values.astype(object) * R.scale
        bad = np.argwhere(a != b)
    else:
        bad = np.argwhere(np.abs(R.values - D.values) > D.eps * max(1, D.m))
    if bad.size:
        i, j = (int(t) for t in bad[0])
        raise VerificationFailed(i, j, D[i, j], R[i, j])
    return W


def _bug(message: str):
    raise RuntimeError(f"internal inconsistency: {message}")


# --- all-edges-useful hypercubes ------------------------------------------------

def _hypercube_prelude(D, trail: _Trail):
    P = _coerce(D)
    n = _log2(P.m)
    if n is None:
        raise OrderNotPowerOfTwo(P.m)
    trail.n = n
    D, rejected = _validated(P, trail)
    return n, D, rejected


def _hypercube_certificate(D, C, S, n, trail):
    emb = hypercube_embedding(S, n)
    if emb is None:
        _bug("skeleton passed the hypercube tests but has no cube coordinates")
    W = reconstruct_and_verify(D, HYPERCUBE, emb, C=C, target=hypercube(n))
    return trail.accept(emb, W)


def recognize_hypercube_count(D) -> Verdict:
    """All-useful n-hypercube test by edge count and the (0,2) property.

    Accept iff the skeleton has ``2**(n-1) * n`` edges and every two vertices
    have 0 or 2 common skeleton neighbours; Mulder's theorem then makes the
    skeleton Q_n.
    """
    trail = _Trail(HYPERCUBE)
    n, D, rejected = _hypercube_prelude(D, trail)
    if rejected:
        return rejected
    C = classify(D)
    trail.r = r = C.r
    expected = n << (n - 1)
    if r != expected:
        degs = C.degrees
        x = int(np.nonzero(degs != n)[0][0])
        return trail.reject("cubici0.a", (x,), (r, expected, int(degs[x])))
    trail.ok("cubici0.a")
    S = Graph.from_adjacency(C.mask)
    zt = is_zero_two_graph(S)
    if not zt:
        return trail.reject("cubici0.b", zt.witness, zt.values)
    trail.ok("cubici0.b")
    return _hypercube_certificate(D, C, S, n, trail)


def hypercube_count_kernel(D: DistanceMatrix) -> bool:
    """Accept/reject of ``recognize_hypercube_count`` without building a certificate.

    Mirrors the tower-matrix program: classify, then check ``#X_1(x) = log2 m``
    for every x and the (0,2) property. Used by the benchmark.
    """
    n = _log2(D.m)
    if n is None:
        raise OrderNotPowerOfTwo(D.m)
    C = classify(D)
    if not np.all(C.degrees == n):
        return False
    counts = common_neighbor_counts(Graph.from_adjacency(C.mask))
    off = ~np.eye(D.m, dtype=bool)
    return bool(np.all(((counts == 0) | (counts == 2)) | ~off))


def recognize_hypercube_layers(D) -> Verdict:
    """All-useful n-hypercube test by breadth-first layers.

    (a) each ``y`` at skeleton distance ``k`` from ``x`` has exactly ``k``
    neighbours at distance ``k - 1``; the geodesic counts ``d(x, y)!`` that
    follow from (a) are confirmed too. (b) is checked as bipartiteness of the
    skeleton, which is what excluding odd/even path pairs amounts to.
    """
    trail = _Trail(HYPERCUBE)
    n, D, rejected = _hypercube_prelude(D, trail)
    if rejected:
        return rejected
    C = classify(D)
    trail.r = C.r
    S = Graph.from_adjacency(C.mask)
    A = C.mask
    for x in range(D.m):
        dist = np.array(S.bfs_distances(x))
        if x == 0:
            trail.cross["layer_sizes"] = np.bincount(dist).tolist()
        down = ((dist[None, :] == dist[:, None] - 1) & A).sum(axis=1)
        bad = np.nonzero(down != dist)[0]
        if bad.size:
            y = int(bad[0])
            return trail.reject("cubici.a", (x, y), (int(dist[y]), int(down[y])))
    trail.ok("cubici.a")
    bip = is_bipartite(S)
    if not bip:
        return trail.reject("cubici.b", bip.witness, (len(bip.witness),))
    trail.ok("cubici.b")
    for x in range(D.m):
        dist, count = geodesic_counts(S, x)
        for y in range(D.m):
            if count[y] != factorial(dist[y]):
                return trail.reject("cubici.a", (x, y), (dist[y], count[y], factorial(dist[y])))
    trail.cross["geodesics"] = "d(x,y)! for all pairs"
    return _hypercube_certificate(D, C, S, n, trail)


# --- Q_3 with arbitrary weights -------------------------------------------------

def _q3_completions(S: Graph, deficient: list[int]):
    """Yield symmetric completions of the degree-deficient vertices to degree 3.

    Each completion is a sorted tuple of new edges among ``deficient``; the
    enumeration is lexicographic.
    """
    need = {z: 3 - S.degree(z) for z in deficient}

    def extend(added: list[tuple[int, int]]):
        todo = [z for z in deficient if need[z] > 0]
        if not todo:
            yield tuple(added)
            return
        z = todo[0]
        eligible = [p for p in todo[1:] if not S.has_edge(z, p)]
        for partners in combinations(eligible, need[z]):
            for p in partners:
                need[p] -= 1
                added.append((z, p))
            need[z] = 0
            yield from extend(added)
            need[z] = len(partners)
            for p in partners:
                need[p] += 1
                added.pop()

    yield from extend([])


def recognize_q3_general(D) -> Verdict:
    """Is ``D`` the distance matrix of Q_3 under some positive weighting?

    Useless edges are allowed. Let r be the number of indecomposable entries.
    After checking degrees at most 3 and r in 7..12 the test branches on r:

    * r = 7, the skeleton is a spanning tree; it must be a tree metric with
      an odd maximal path, at most two degree-3 vertices, and those two (if
      present) an odd number of edges apart.
    * r = 8..11, the vertices of degree below 3 must admit a symmetric
      completion to a (0,2)-graph.
    * r = 12, the skeleton itself must be a (0,2)-graph.

    Cube edges missing from the skeleton are weighted ``2 * max(D)``.
    """
    trail = _Trail(Q3_GENERAL)
    P = _coerce(D)
    if P.m != 8:
        raise OrderNot8(P.m)
    trail.n = 3
    D, rejected = _validated(P, trail)
    if rejected:
        return rejected
    C = classify(D)
    S = Graph.from_adjacency(C.mask)
    degs = S.degrees()
    trail.r = r = C.r
    for x, d in enumerate(degs):
        if d > 3:
            return trail.reject("q3.a", (x,), (d,))
    trail.ok("q3.a")
    if not 7 <= r <= 12:
        return trail.reject("q3.b", (), (r,))
    trail.ok("q3.b")
    extra = 2 * D.max_entry()
    cube = hypercube(3)

    if r == 7:
        fp = four_point_condition(D)
        if not fp:
            return trail.reject("q3.r7.fourpoint", fp.witness, fp.values)
        trail.ok("q3.r7.fourpoint")
        med = is_median(D)
        if not med:
            return trail.reject("q3.r7.median", med.witness, med.values)
        trail.ok("q3.r7.median")
        paths = tree_path_analysis(S)
        trail.cross["maximal_path_lengths"] = list(paths.lengths)
        if not paths.has_odd:
            leaves = tuple(v for v in range(8) if degs[v] == 1)
            return trail.reject("q3.r7.oddpath", leaves, paths.lengths)
        trail.ok("q3.r7.oddpath")
        if not paths.degree3_compatible:
            return trail.reject("q3.r7.deg3adjacency", paths.degree3_pair,
                                (len(paths.degree3), paths.degree3_separation))
        trail.ok("q3.r7.deg3adjacency")
        emb = embed_into_q3(S)
        if emb is None:
            _bug("r=7 tree passed every condition but does not embed in Q_3")
        W = reconstruct_and_verify(D, Q3_GENERAL, emb, extra, C=C, target=cube)
        return trail.accept(emb, W)

    if r < 12:
        deficient = [v for v in range(8) if degs[v] < 3]
        k = len(deficient)
        # 12 - r missing cube edges touch at most 2 * (12 - r) vertices; with
        # r = 8 a Hamiltonian 8-cycle leaves all eight deficient, so the upper
        # end is capped at 8 rather than 6
        lo, hi = min(13 - r, 4), min(24 - 2 * r, 8)
        trail.cross["deficient"] = [v + 1 for v in deficient]
        if not lo <= k <= hi:
            return trail.reject("q3.r8_11.k_range", deficient, (k, lo, hi))
        trail.ok("q3.r8_11.k_range")
        tried = 0
        for added in _q3_completions(S, deficient):
            tried += 1
            Q = Graph(8, S.edges() + list(added))
            if is_zero_two_graph(Q):
                trail.ok("q3.r8_11.completion")
                trail.cross["completion_edges"] = [(u + 1, v + 1) for u, v in added]
                emb = embed_into_q3(Q)
                if emb is None:
                    _bug("completed (0,2)-graph on 8 vertices is not Q_3")
                W = reconstruct_and_verify(D, Q3_GENERAL, emb, extra, C=C, target=cube)
                return trail.accept(emb, W)
        return trail.reject("q3.r8_11.completion", deficient, (tried,))

    zt = is_zero_two_graph(S)
    if not zt:
        return trail.reject("q3.r12.zerotwo", zt.witness, zt.values)
    trail.ok("q3.r12.zerotwo")
    emb = embed_into_q3(S)
    if emb is None:
        _bug("3-regular (0,2)-graph on 8 vertices is not Q_3")
    W = reconstruct_and_verify(D, Q3_GENERAL, emb, C=C, target=cube)
    return trail.accept(emb, W)


# --- Petersen -------------------------------------------------------------------

def recognize_petersen(D) -> Verdict:
    """All-useful Petersen test on a 10 x 10 matrix.

    (a) every skeleton degree is 3; (b) no skeleton cycle of length 3 or 4;
    (c) some skeleton 5-cycle has five distinct outside neighbours. The cycle
    becomes the outer ring ``v1..v5`` and its outside neighbours the inner
    vertices ``vbar1..vbar5``.
    """
    trail = _Trail(PETERSEN)
    P = _coerce(D)
    if P.m != 10:
        raise OrderNot10(P.m)
    D, rejected = _validated(P, trail)
    if rejected:
        return rejected
    C = classify(D)
    S = Graph.from_adjacency(C.mask)
    trail.r = C.r
    for x, d in enumerate(S.degrees()):
        if d != 3:
            return trail.reject("petersen.a", (x,), (d,))
    trail.ok("petersen.a")
    for length in (3, 4):
        cyc = find_cycle(S, length)
        if cyc is not None:
            return trail.reject("petersen.b", cyc, (length,))
    trail.ok("petersen.b")
    first_failure = None
    for ring in cycles(S, 5):
        on_ring = set(ring)
        outside = [sorted(S.neighbors(v) - on_ring) for v in ring]
        if all(len(o) == 1 for o in outside) and len({o[0] for o in outside}) == 5:
            break
        if first_failure is None:
            first_failure = ring
    else:
        return trail.reject("petersen.c", first_failure or (), ())
    trail.ok("petersen.c")
    images = [0] * 10
    for j, v in enumerate(ring):
        images[v] = j
        images[outside[j][0]] = j + 5
    emb = Embedding(tuple(images), tuple(PETERSEN_LABELS[t] for t in images))
    target = petersen()
    if not emb.maps_edges(S, target):
        _bug("Petersen labelling does not preserve skeleton edges")
    W = reconstruct_and_verify(D, PETERSEN, emb, C=C, target=target)
    return trail.accept(emb, W)


# --- trees ----------------------------------------------------------------------

def recognize_tree(D) -> Verdict:
    """Tree on exactly the matrix indices: 4-point condition plus median."""
    trail = _Trail(TREE)
    P = _coerce(D)
    D, rejected = _validated(P, trail)
    if rejected:
        return rejected
    fp = four_point_condition(D)
    if not fp:
        return trail.reject("tree.fourpoint", fp.witness, fp.values)
    trail.ok("tree.fourpoint")
    med = is_median(D)
    if not med:
        return trail.reject("tree.median", med.witness, med.values)
    trail.ok("tree.median")
    C = classify(D)
    trail.r = C.r
    S = Graph.from_adjacency(C.mask)
    if C.r != D.m - 1:
        _bug("tree metric whose skeleton is not a spanning tree")
    emb = Embedding(tuple(range(D.m)), tuple(str(i + 1) for i in range(D.m)))
    W = reconstruct_and_verify(D, TREE, emb, C=C, target=S)
    return trail.accept(emb, W)


RECOGNIZERS = {
    "hypercube": recognize_hypercube_count,
    "hypercube-layers": recognize_hypercube_layers,
    "q3": recognize_q3_general,
    "petersen": recognize_petersen,
    "tree": recognize_tree,
}


def applicable(m: int) -> list[str]:
    """CLI family names whose order precondition ``m`` satisfies, in fixed order."""
    out = []
    if _log2(m) is not None:
        out.append("hypercube")
    if m == 8:
        out.append("q3")
    if m == 10:
        out.append("petersen")
    out.append("tree")
    return out


def recognize(D, family: str) -> Verdict:
    try:
        fn = RECOGNIZERS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(RECOGNIZERS)}") from None
    return fn(D)
