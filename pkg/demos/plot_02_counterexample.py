"""
A bipartite 4-regular graph that is not Q_4
===========================================

Order 16, every degree 4, bipartite: the obvious local invariants of Q_4
all hold. The (0,2) test on the skeleton still catches it.
"""

from metric_recognizer import apsp, counterexample_graph, is_bipartite, recognize
from metric_recognizer.graph import WeightedGraph

G = counterexample_graph()
print("order", G.order, "degrees", sorted(set(G.degrees())), "bipartite", bool(is_bipartite(G)))

D = apsp(WeightedGraph(G, {e: 1 for e in G.edges()}))

for family in ("hypercube", "hypercube-layers"):
    v = recognize(D, family)
    d = v.to_dict()["rejection"]
    print(f"{family:17s} rejected at {d['condition']}: witness {d['witness']} values {d['values']}")

# vertices 1 and 2 (y1 and y2) have four common neighbours; a cube allows 0 or 2
print("common neighbours of 1 and 2:", sorted(u + 1 for u in G.neighbors(0) & G.neighbors(1)))
