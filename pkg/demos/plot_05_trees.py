"""
Tree metrics
============

A matrix comes from a positive-weighted tree on exactly its indices when the
4-point condition holds and every triple has a single median.
"""

from fractions import Fraction

from metric_recognizer import GeneratorSpec, gen_weighted, recognize_tree, validate

_, D = gen_weighted(GeneratorSpec("tree", 7, seed=12))
v = recognize_tree(D)
print("random tree accepted:", v.accepted)
for u, w, x in v.certificate.graph.edges():
    print(f"  {u + 1} - {w + 1}  weight {x}")

# a triangle: every point is the same distance from the other two, no median
k3 = recognize_tree(validate([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
print("K3:", k3.rejection.condition, "median count", k3.to_dict()["rejection"]["values"])

# the unit square: pair sums 2, 2, 4, so the two largest differ
q2 = recognize_tree(validate([[0, 1, 1, 2], [1, 0, 2, 1], [1, 2, 0, 1], [2, 1, 1, 0]]))
print("Q2:", q2.rejection.condition, "sums", q2.to_dict()["rejection"]["values"])

# exact rationals throughout: halving every entry changes nothing
half = recognize_tree(D.scaled(Fraction(1, 2)))
print("scaled by 1/2 still accepted:", half.accepted)
