"""Acceptance criteria, one test each, with their time limits.

Run alone with ``pytest tests/test_acceptance.py -v`` (or ``python
tests/test_acceptance.py``); each criterion prints a PASS/FAIL line in the
"acceptance criteria" section of the summary.
"""
import math
import sys
import time
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

from metric_recognizer import (
    Graph,
    WeightedGraph,
    apsp,
    classify,
    count_geodesics,
    counterexample_graph,
    hypercube,
    mutate,
    oracle_realizable,
    petersen,
    recognize_hypercube_count,
    recognize_hypercube_layers,
    recognize_petersen,
    recognize_q3_general,
    recognize_tree,
    skeleton,
    validate,
)
from metric_recognizer.cli import bench
from metric_recognizer.errors import TriangleViolation
from metric_recognizer.graph import PETERSEN_LABELS, cycle_graph
from metric_recognizer.oracle import MUTATIONS, GeneratorSpec, gen_weighted
from metric_recognizer.weighted import useful_edges_by_deletion, useful_edges_by_indecomposability

sys.path.insert(0, str(Path(__file__).parent))
from oracles import broom, dijkstra_matrix, starlike, unit_weights  # noqa: E402

pytestmark = pytest.mark.acceptance

SEEDS = range(200)
HAM_PATH = [0, 1, 3, 2, 6, 7, 5, 4]


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


@lru_cache(maxsize=None)
def hypercube_instances():
    return [(n, s, gen_weighted(GeneratorSpec("hypercube", n, seed=s))[1]) for n in (1, 2, 3, 4) for s in SEEDS]


@lru_cache(maxsize=None)
def petersen_instances():
    return [gen_weighted(GeneratorSpec("petersen", weight_range=(1, 4), seed=s))[1] for s in SEEDS]


def hamiltonian_q3():
    Q = hypercube(3)
    path = {tuple(sorted(p)) for p in zip(HAM_PATH, HAM_PATH[1:])}
    return apsp(WeightedGraph(Q, {e: 1 if e in path else 100 for e in Q.edges()}))


@lru_cache(maxsize=None)
def q3_branch_instances():
    """(label, matrix, expected r) for every branch of the Q3 recognizer."""
    out = [("r=12 unit Q3", apsp(unit_weights(hypercube(3))), 12), ("r=7 Hamiltonian path", hamiltonian_q3(), 7)]
    for r in (8, 9, 10, 11):
        seed = 0
        while True:
            _, D = gen_weighted(GeneratorSpec("q3-with-useless", 12 - r, seed=seed))
            if classify(D).r == r:
                break
            seed += 1
        out.append((f"r={r} q3-with-useless seed {seed}", D, r))
    return out


def q3_rejects():
    return [
        ("St(1,3,3)", apsp(unit_weights(starlike(1, 3, 3)))),
        ("Br(2|1,1|1,2)", apsp(unit_weights(broom(2, (1, 1), (1, 2))))),
    ]


def certified(D, verdict) -> bool:
    return verdict.accepted and dijkstra_matrix(verdict.certificate.graph) == D.rows()


def test_criterion_01_edge_count(report):
    with Timer() as t:
        bad = []
        for n in (1, 2, 3, 4):
            for s in range(10):
                _, D = gen_weighted(GeneratorSpec("hypercube", n, seed=s))
                if classify(D).r != 2 ** (n - 1) * n:
                    bad.append((n, s))
    ok = not bad and t.seconds < 1
    report(1, "edge count 2^(n-1)n for n=1..4", ok, f"{t.seconds:.2f}s, mismatches {bad}")
    assert not bad
    assert t.seconds < 1


def test_criterion_02_round_trip(report):
    with Timer() as t:
        failures = []
        for n, s, D in hypercube_instances():
            a, b = recognize_hypercube_count(D), recognize_hypercube_layers(D)
            if not (certified(D, a) and b.accepted and apsp(b.certificate.graph) == D):
                failures.append((n, s))
    ok = not failures and t.seconds < 30
    report(2, "800 all-useful hypercubes accepted by both, certificates exact", ok,
           f"{t.seconds:.1f}s, failures {failures[:5]}")
    assert not failures
    assert t.seconds < 30


def test_criterion_03_recognizer_pair(report):
    with Timer() as t:
        cases = [D for _, _, D in hypercube_instances()]
        for k, (n, s, D) in enumerate(hypercube_instances()):
            if D.m == 2:
                # only one pair; bump it to a different positive value
                cases.append(mutate(D, "entry-bump", seed=s))
            else:
                cases.append(mutate(D, MUTATIONS[k % 3], seed=s))
        disagree = 0
        rejected_mutants = 0
        for i, M in enumerate(cases):
            a, b = recognize_hypercube_count(M), recognize_hypercube_layers(M)
            disagree += a.accepted != b.accepted
            if i >= 800 and not a.accepted:
                rejected_mutants += 1
    ok = disagree == 0 and t.seconds < 60
    report(3, "count vs layer recognizers agree on 800 + 800 mutants", ok,
           f"{t.seconds:.1f}s, {disagree} disagreements, {rejected_mutants} mutants rejected")
    assert len(cases) == 1600
    assert disagree == 0
    assert t.seconds < 60


def test_criterion_04_counterexample(report):
    with Timer() as t:
        G = counterexample_graph()
        D = apsp(unit_weights(G))
        S = skeleton(D)
        a, b = recognize_hypercube_count(D), recognize_hypercube_layers(D)

        def common(pair):
            x, y = pair
            return len(S.neighbors(x) & S.neighbors(y))

        bipartite_regular = set(G.degrees()) == {4} and G.order == 16
        ok_a = not a.accepted and a.rejection.condition == "cubici0.b" and common(a.rejection.witness[:2]) == 4
        ok_b = not b.accepted and b.rejection.condition == "cubici.a" and common(b.rejection.witness[:2]) == 4
    ok = bipartite_regular and ok_a and ok_b and t.seconds < 1
    report(4, "counterexample rejected by both with a 4-common-neighbour pair", ok,
           f"{t.seconds:.2f}s, count {a.rejection.condition} {a.rejection.witness}, "
           f"layers {b.rejection.condition} {b.rejection.witness}")
    assert bipartite_regular and ok_a and ok_b
    assert t.seconds < 1


def test_criterion_05_geodesic_factorial(report):
    with Timer() as t:
        bad = []
        for n in (1, 2, 3, 4):
            Q = hypercube(n)
            for x in range(Q.order):
                dist = Q.bfs_distances(x)
                for y in range(Q.order):
                    if count_geodesics(Q, x, y) != math.factorial(dist[y]):
                        bad.append((n, x, y))
    ok = not bad and t.seconds < 5
    report(5, "geodesic counts d(x,y)! on Q1..Q4", ok, f"{t.seconds:.2f}s")
    assert not bad
    assert t.seconds < 5


def test_criterion_06_q3_branches(report):
    with Timer() as t:
        outcomes = []
        for label, D, r in q3_branch_instances():
            v = recognize_q3_general(D)
            outcomes.append((label, v.r == r and certified(D, v)))
        for label, D in q3_rejects():
            v = recognize_q3_general(D)
            outcomes.append((label, v.r == 7 and not v.accepted and v.rejection.condition.startswith("q3.r7.")))
    failed = [label for label, good in outcomes if not good]
    ok = not failed and t.seconds < 10
    report(6, "Q3 branches r=7..12 accepted, St(1,3,3) and Br(2|1,1|1,2) rejected at r=7", ok,
           f"{t.seconds:.2f}s, failed {failed}")
    assert not failed
    assert t.seconds < 10


def test_criterion_07_petersen(report):
    with Timer() as t:
        failures = [s for s, D in zip(SEEDS, petersen_instances()) if not certified(D, recognize_petersen(D))]
        ring = apsp(unit_weights(cycle_graph(10)))
        v = recognize_petersen(ring)
        ring_ok = not v.accepted and v.rejection.condition == "petersen.a"
    ok = not failures and ring_ok and t.seconds < 30
    report(7, "200 Petersen instances accepted, 10-cycle rejected at petersen.a", ok,
           f"{t.seconds:.1f}s, failures {failures[:5]}")
    assert not failures and ring_ok
    assert t.seconds < 30


def test_criterion_08_trees(report):
    with Timer() as t:
        failures = []
        for s in SEEDS:
            m = 4 + s % 7
            _, D = gen_weighted(GeneratorSpec("tree", m, seed=s))
            if not certified(D, recognize_tree(D)):
                failures.append(s)
        k3 = recognize_tree(validate([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
        q2 = recognize_tree(apsp(unit_weights(hypercube(2))))
        ok_neg = k3.rejection.condition == "tree.median" and q2.rejection.condition == "tree.fourpoint"
    ok = not failures and ok_neg and t.seconds < 30
    report(8, "200 random trees accepted, K3 median and Q2 4-point rejections", ok,
           f"{t.seconds:.1f}s, failures {failures[:5]}")
    assert not failures and ok_neg
    assert t.seconds < 30


def test_criterion_09_oracle_agreement(report):
    with Timer() as t:
        checked = 0
        disagree = []
        for n, s, D in hypercube_instances():
            if D.m > 10:
                continue
            checked += 1
            rec = recognize_hypercube_count(D).accepted
            orc = oracle_realizable(D, hypercube(n), all_useful=True) is not None
            if rec != orc:
                disagree.append(("hypercube", n, s))
        for label, D, _ in q3_branch_instances():
            checked += 1
            if recognize_q3_general(D).accepted != (oracle_realizable(D, hypercube(3)) is not None):
                disagree.append(("q3", label))
        for label, D in q3_rejects():
            checked += 1
            if recognize_q3_general(D).accepted != (oracle_realizable(D, hypercube(3)) is not None):
                disagree.append(("q3", label))
        for s, D in zip(SEEDS, petersen_instances()):
            checked += 1
            orc = oracle_realizable(D, petersen(), all_useful=True, labels=PETERSEN_LABELS) is not None
            if recognize_petersen(D).accepted != orc:
                disagree.append(("petersen", s))
    ok = not disagree and t.seconds < 600
    report(9, "oracle agrees with recognizers on every instance of order <= 10", ok,
           f"{t.seconds:.1f}s, {checked} instances, disagreements {disagree[:5]}")
    assert checked == 600 + 8 + 200
    assert not disagree
    assert t.seconds < 600


def test_criterion_10_cubic_scaling(report):
    report_ = bench([64, 128, 256, 512], repetitions=3)
    big = bench([1024], repetitions=1)
    slope, t1024 = report_["slope"], big["seconds"][0]
    ok = 2.5 <= slope <= 3.5 and t1024 < 60 and all(report_["accepted"]) and big["accepted"] == [True]
    times = ", ".join(f"{m}: {s * 1e3:.0f}ms" for m, s in zip(report_["sizes"], report_["seconds"]))
    report(10, "log-log slope in [2.5, 3.5] and m=1024 under 60s", ok,
           f"slope {slope:.3f}; {times}; 1024: {t1024:.1f}s")
    assert 2.5 <= slope <= 3.5
    assert t1024 < 60
    assert all(report_["accepted"]) and big["accepted"] == [True]


def test_criterion_11_useful_edges(report):
    rng = np.random.default_rng(2024)
    with Timer() as t:
        mismatches = 0
        graphs = 0
        while graphs < 100:
            m = int(rng.integers(2, 11))
            p = float(rng.uniform(0.2, 0.9))
            edges = [(i, j) for i in range(m) for j in range(i + 1, m) if rng.random() < p]
            G = Graph(m, edges)
            if not G.is_connected():
                continue
            graphs += 1
            # small integer weights make ties (and so tied useless edges) common
            W = WeightedGraph(G, {e: int(rng.integers(1, 5)) for e in G.edges()})
            if useful_edges_by_deletion(W) != useful_edges_by_indecomposability(W):
                mismatches += 1
    ok = mismatches == 0 and t.seconds < 60
    report(11, "deletion and indecomposability useful-edge sets coincide on 100 graphs", ok,
           f"{t.seconds:.1f}s, {mismatches} mismatches")
    assert mismatches == 0
    assert t.seconds < 60


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
