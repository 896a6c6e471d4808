from fractions import Fraction

import numpy as np
import pytest

from metric_recognizer import (
    SizeGuard,
    SpecError,
    apsp,
    hypercube,
    mutate,
    oracle_realizable,
    petersen,
    recognize,
    useful_edges,
)
from metric_recognizer.graph import PETERSEN_LABELS
from metric_recognizer.oracle import MUTATIONS, GeneratorSpec, dump_fixture, gen_weighted
from metric_recognizer.matrix import PredistanceMatrix, validate
from metric_recognizer.errors import TriangleViolation
from oracles import broom, dijkstra_matrix, starlike, unit_weights


class TestOracle:
    def test_unit_q3(self, unit_q3):
        emb = oracle_realizable(unit_q3, hypercube(3), all_useful=True)
        assert emb is not None and emb.is_bijective(8)

    def test_unit_petersen(self, unit_petersen):
        emb = oracle_realizable(unit_petersen, petersen(), all_useful=True, labels=PETERSEN_LABELS)
        assert emb is not None and set(emb.labels) == set(PETERSEN_LABELS)

    def test_order_mismatch(self, unit_q2):
        with pytest.raises(ValueError):
            oracle_realizable(unit_q2, petersen())

    def test_size_guard(self, unit_counterexample):
        with pytest.raises(SizeGuard):
            oracle_realizable(unit_counterexample, hypercube(4))

    def test_unembeddable_trees(self):
        for T in (starlike(1, 3, 3), broom(2, (1, 1), (1, 2))):
            assert oracle_realizable(apsp(unit_weights(T)), hypercube(3)) is None

    def test_br3_11_11_embeds(self):
        assert oracle_realizable(apsp(unit_weights(broom(3, (1, 1), (1, 1)))), hypercube(3)) is not None


def _oracle_for(family, D):
    if family == "hypercube":
        n = D.m.bit_length() - 1
        return oracle_realizable(D, hypercube(n), all_useful=True)
    if family == "q3":
        return oracle_realizable(D, hypercube(3))
    return oracle_realizable(D, petersen(), all_useful=True)


def _agree(family, M):
    try:
        D = validate(M)
    except TriangleViolation:
        return not recognize(M, family).accepted
    return recognize(D, family).accepted == (_oracle_for(family, D) is not None)


def _family_spec(family, seed):
    if family == "hypercube":
        return GeneratorSpec("hypercube", 1 + seed % 3, seed=seed)
    if family == "q3":
        return GeneratorSpec("q3-with-useless", seed % 6, seed=seed)
    return GeneratorSpec("petersen", seed=seed)


@pytest.mark.parametrize("family", ["hypercube", "q3", "petersen"])
def test_agreement_on_instances_and_mutants(family):
    """200 generated instances and 200 single mutants per family."""
    disagree = []
    for seed in range(200):
        _, D = gen_weighted(_family_spec(family, seed))
        if not _agree(family, D):
            disagree.append(("instance", seed))
        kind = MUTATIONS[seed % 3] if D.m > 2 else "entry-bump"
        if not _agree(family, mutate(D, kind, seed=seed)):
            disagree.append((kind, seed))
    assert disagree == []


class TestGenerators:
    @pytest.mark.parametrize(
        "spec",
        [GeneratorSpec("hypercube", n, seed=s) for n in (1, 2, 3, 4) for s in range(3)]
        + [GeneratorSpec("petersen", seed=s) for s in range(3)],
        ids=lambda s: s.name,
    )
    def test_all_edges_useful(self, spec):
        W, D = gen_weighted(spec)
        assert dijkstra_matrix(W) == D.rows()
        assert useful_edges(W) == set(W.graph.edges())

    @pytest.mark.parametrize("t", range(6))
    def test_useless_count(self, t):
        W, D = gen_weighted(GeneratorSpec("q3-with-useless", t, seed=7))
        assert len(useful_edges(W)) == 12 - t
        assert dijkstra_matrix(W) == D.rows()

    def test_weights_are_dyadic_and_in_range(self):
        W, _ = gen_weighted(GeneratorSpec("petersen", weight_range=("1", "4"), seed=3))
        for _, _, w in W.edges():
            assert 1 <= w < 4
            assert (w.denominator & (w.denominator - 1)) == 0

    def test_tree_is_a_tree(self):
        W, D = gen_weighted(GeneratorSpec("tree", 8, seed=1))
        assert W.graph.edge_count() == 7 and W.graph.is_connected()
        assert all(w > 0 for _, _, w in W.edges())

    def test_determinism(self):
        a = gen_weighted(GeneratorSpec("q3-with-useless", 3, seed=99))
        b = gen_weighted(GeneratorSpec("q3-with-useless", 3, seed=99))
        assert a[0] == b[0] and a[1] == b[1]
        assert recognize(a[1], "q3").to_dict() == recognize(b[1], "q3").to_dict()

    def test_seeds_differ(self):
        assert gen_weighted(GeneratorSpec("hypercube", 3, seed=1))[1] != gen_weighted(
            GeneratorSpec("hypercube", 3, seed=2)
        )[1]

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(family="kneser"),
            dict(family="hypercube", size=0),
            dict(family="hypercube", size=3, weight_range=(1, 3)),
            dict(family="petersen", weight_range=(1, 5)),
            dict(family="tree", size=1),
            dict(family="tree", size=5, weight_range=(3, 2)),
            dict(family="q3-with-useless", size=6),
            dict(family="hypercube", size=2, seed=-1),
        ],
    )
    def test_bad_specs(self, kwargs):
        with pytest.raises(SpecError):
            GeneratorSpec(**kwargs)


class TestMutate:
    def test_zero_bump_is_identity(self, unit_q3):
        M = mutate(unit_q3, "entry-bump", pair=(0, 7), delta=0)
        assert M == unit_q3
        assert recognize(M, "hypercube").accepted

    def test_antipodal_bump_breaks_triangle(self, unit_q3):
        M = mutate(unit_q3, "entry-bump", pair=(0, 7), delta=1)
        assert M[0, 7] == 4
        v = recognize(M, "hypercube")
        assert v.rejection.condition == "triangle"
        assert recognize(M, "hypercube-layers").rejection.condition == "triangle"

    def test_swap(self, unit_q3):
        M = mutate(unit_q3, "swap-pair", pair=(0, 1), other=(0, 7))
        assert M[0, 1] == 3 and M[1, 0] == 3 and M[0, 7] == 1

    def test_scale_row(self, unit_q3):
        M = mutate(unit_q3, "scale-row", row=2, factor=Fraction(3, 2))
        assert M[2, 0] == Fraction(3, 2) and M[0, 1] == 1

    def test_results_are_predistance(self, unit_petersen):
        for kind in MUTATIONS:
            for seed in range(20):
                M = mutate(unit_petersen, kind, seed=seed)
                assert isinstance(M, PredistanceMatrix)
                assert np.array_equal(np.asarray(M.values), np.asarray(M.values).T)

    def test_unknown_kind(self, unit_q3):
        with pytest.raises(ValueError):
            mutate(unit_q3, "transpose")


def test_dump_fixture(tmp_path, unit_q3):
    import json

    from metric_recognizer import read_matrix

    v = recognize(unit_q3, "hypercube")
    m, j = dump_fixture("q3", unit_q3, v.to_dict(), tmp_path)
    assert read_matrix(m) == unit_q3
    assert json.loads(open(j).read())["r"] == 12
