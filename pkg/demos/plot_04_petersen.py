"""
The Petersen graph
==================

Weights in [1, 4) keep every Petersen edge useful (girth 5, so a detour has
at least four edges). The recognizer finds an outer 5-cycle whose spokes
reach five different inner vertices and labels everything from there.
"""

from metric_recognizer import GeneratorSpec, apsp, gen_weighted, recognize_petersen
from metric_recognizer.graph import WeightedGraph, cycle_graph

W, D = gen_weighted(GeneratorSpec("petersen", seed=4))
v = recognize_petersen(D)
print("accepted:", v.accepted)
for i, label in enumerate(v.certificate.embedding.labels):
    print(f"  index {i + 1:2d} -> {label}")

# a 10-cycle has the right order but every skeleton degree is 2
C10 = cycle_graph(10)
ring = apsp(WeightedGraph(C10, {e: 1 for e in C10.edges()}))
r = recognize_petersen(ring)
print("10-cycle:", r.rejection.condition, "degree", r.rejection.values[0])
