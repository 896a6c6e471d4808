"""
Recognizing a weighted hypercube
================================

Draw random weights on the edges of Q_4, compute the distance matrix, and
ask whether that matrix alone is enough to get the cube back.
"""

import numpy as np

from metric_recognizer import (
    GeneratorSpec,
    classify,
    gen_weighted,
    recognize_hypercube_count,
    recognize_hypercube_layers,
)

# weights in [1, 2) keep every edge useful: a detour needs at least three edges
W, D = gen_weighted(GeneratorSpec("hypercube", 4, seed=7))
print("order", D.m, "largest entry", D.max_entry())

# the indecomposable entries are exactly the cube edges
C = classify(D)
print("indecomposable pairs:", C.r, "expected", 2 ** 3 * 4)
print("skeleton degrees:", np.unique(C.degrees))

# route one: count the edges, then check the (0,2) property
v = recognize_hypercube_count(D)
print(v.family, "accepted" if v.accepted else "rejected", "trail:", v.trail)

# route two: breadth-first layers from every vertex
w = recognize_hypercube_layers(D)
print("layer sizes from vertex 1:", w.cross_checks["layer_sizes"])

# the certificate labels each index with a bit string and re-weights the cube
emb = v.certificate.embedding
for i in range(4):
    print(f"index {i + 1} -> {emb.labels[i]}")
same = sorted(v.certificate.graph.edges()) == sorted(W.edges())
print("recovered the generating weights:", same)
