"""Independent reference computations used only by the tests.

These deliberately avoid the package's kernels: distances come from
networkx Dijkstra, indecomposability and medians from plain loops.
"""
from fractions import Fraction
from itertools import permutations

import networkx as nx

from metric_recognizer import Graph, WeightedGraph


def to_nx(G, weights=None):
    H = nx.Graph()
    H.add_nodes_from(range(G.order))
    for u, v in G.edges():
        H.add_edge(u, v, weight=Fraction(1) if weights is None else Fraction(weights[(u, v)]))
    return H


def dijkstra_matrix(W: WeightedGraph):
    H = to_nx(W.graph, W.weights)
    m = W.order
    out = [[None] * m for _ in range(m)]
    for s in range(m):
        dist = nx.single_source_dijkstra_path_length(H, s, weight="weight")
        for t, d in dist.items():
            out[s][t] = Fraction(d)
    return out


def unit_matrix(G: Graph):
    """Hop-count distance matrix via networkx BFS."""
    lengths = dict(nx.all_pairs_shortest_path_length(to_nx(G)))
    return [[Fraction(lengths[i][j]) for j in range(G.order)] for i in range(G.order)]


def brute_indecomposable(d):
    m = len(d)
    return {
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if all(d[i][j] < d[i][k] + d[k][j] for k in range(m) if k not in (i, j))
    }


def brute_medians(d, a, b, c):
    m = len(d)
    return [
        y for y in range(m)
        if d[a][b] == d[a][y] + d[y][b] and d[a][c] == d[a][y] + d[y][c] and d[b][c] == d[b][y] + d[y][c]
    ]


def brute_is_median(d):
    m = len(d)
    return all(
        len(brute_medians(d, a, b, c)) == 1
        for a in range(m) for b in range(a + 1, m) for c in range(b + 1, m)
    )


def brute_four_point(d):
    m = len(d)
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                for h in range(k + 1, m):
                    s = sorted([d[i][j] + d[k][h], d[i][k] + d[j][h], d[i][h] + d[j][k]])
                    if s[2] != s[1]:
                        return False
    return True


def starlike(*arms) -> Graph:
    """St(n1, ..., nk): root 0 with paths of the given lengths."""
    edges, nxt = [], 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return Graph(nxt, edges)


def broom(s, left, right) -> Graph:
    """Br(s | left | right): two branch vertices joined by a path of s edges."""
    edges = [(i, i + 1) for i in range(s)]
    v1, v2, nxt = 0, s, s + 1
    for root, arms in ((v1, left), (v2, right)):
        for length in arms:
            prev = root
            for _ in range(length):
                edges.append((prev, nxt))
                prev, nxt = nxt, nxt + 1
    return Graph(nxt, edges)


def path_graph(m) -> Graph:
    return Graph(m, [(i, i + 1) for i in range(m - 1)])


def brute_embeds_in_q3(S: Graph) -> bool:
    edges = S.edges()
    for perm in permutations(range(8)):
        if all(bin(perm[u] ^ perm[v]).count("1") == 1 for u, v in edges):
            return True
    return False


def simple_path_lengths(G: Graph, s: int, t: int) -> set:
    out = set()

    def walk(u, seen, length):
        if u == t:
            out.add(length)
            return
        for w in G.neighbors(u):
            if w not in seen:
                seen.add(w)
                walk(w, seen, length + 1)
                seen.discard(w)

    walk(s, {s}, 0)
    return out


def unit_weights(G: Graph) -> WeightedGraph:
    return WeightedGraph(G, {e: 1 for e in G.edges()})
