"""
The 3-cube with useless edges
=============================

With arbitrary positive weights some cube edges can be useless: they never
lie on a shortest path, so they leave no trace in the matrix. The Q_3
recognizer branches on how many indecomposable entries r remain.
"""

from metric_recognizer import GeneratorSpec, Graph, WeightedGraph, apsp, gen_weighted, hypercube, recognize_q3_general

# r = 12, 11, ..., 7: remove t edges from the skeleton by making them heavy
for t in range(6):
    _, D = gen_weighted(GeneratorSpec("q3-with-useless", t, seed=1))
    v = recognize_q3_general(D)
    extra = v.cross_checks.get("completion_edges", [])
    print(f"t={t} r={v.r:2d} accepted={v.accepted} completion={extra}")

# unit weights on a Hamiltonian path and 100 elsewhere: the skeleton is the path
ham = [0, 1, 3, 2, 6, 7, 5, 4]
on_path = {tuple(sorted(p)) for p in zip(ham, ham[1:])}
Q = hypercube(3)
D = apsp(WeightedGraph(Q, {e: 1 if e in on_path else 100 for e in Q.edges()}))
v = recognize_q3_general(D)
print("Hamiltonian path: r =", v.r, "maximal paths", v.cross_checks["maximal_path_lengths"])
print("reconstructed weights:", sorted({str(w) for _, _, w in v.certificate.graph.edges()}))


# two spanning trees of 8 vertices that cannot sit inside Q_3
def tree(edges):
    return apsp(WeightedGraph(Graph(8, edges), {e: 1 for e in edges}))


st133 = tree([(0, 1), (0, 2), (2, 3), (3, 4), (0, 5), (5, 6), (6, 7)])
br2 = tree([(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6), (6, 7)])
for name, T in (("St(1,3,3)", st133), ("Br(2|1,1|1,2)", br2)):
    v = recognize_q3_general(T)
    print(f"{name}: r={v.r} rejected at {v.rejection.condition}")
