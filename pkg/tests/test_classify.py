import math

import numpy as np
import pytest

from glyphfeat.classify import FeatureBase, LabeledFeature, classify, euclidean_distance, evaluate
from glyphfeat.errors import DimensionError, EmptyBase, InvalidInput


def _base(pairs):
    return FeatureBase([LabeledFeature(label=l, vector=np.array(v, float)) for l, v in pairs])


def test_distance_identity_and_345():
    rng = np.random.default_rng(50)
    x = rng.random(10)
    assert euclidean_distance(x, x) == 0.0
    assert euclidean_distance((0, 0), (3, 4)) == 5.0


def test_distance_dimension_mismatch():
    with pytest.raises(DimensionError):
        euclidean_distance(np.zeros(3), np.zeros(4))


def test_metric_axioms_random():
    rng = np.random.default_rng(51)
    for _ in range(100):
        x, y, z = rng.normal(0, 3, (3, 8))
        assert euclidean_distance(x, y) == euclidean_distance(y, x)
        assert euclidean_distance(x, z) <= euclidean_distance(x, y) + euclidean_distance(y, z) + 1e-9
        assert euclidean_distance(x, y) >= 0.0


def test_classify_simple():
    base = _base([("A", (0, 0)), ("B", (10, 10))])
    pred = classify(np.array([1.0, 1.0]), base)
    assert pred.label == "A"
    assert pred.distance == pytest.approx(math.sqrt(2))
    assert pred.runner_up_label == "B"
    assert pred.distance <= pred.runner_up_distance


def test_classify_tie_lowest_index():
    base = _base([("A", (0, 0)), ("B", (2, 0))])
    pred = classify(np.array([1.0, 0.0]), base)
    assert pred.label == "A"


def test_classify_exact_match():
    base = _base([("A", (0, 1)), ("B", (5, 5))])
    pred = classify(np.array([5.0, 5.0]), base)
    assert pred.label == "B"
    assert pred.distance == 0.0


def test_classify_errors():
    base = _base([("A", (0, 0, 0))])
    with pytest.raises(DimensionError):
        classify(np.zeros(2), base)
    with pytest.raises(EmptyBase):
        FeatureBase([])


def test_single_entry_base_runner_up():
    base = _base([("A", (1, 2))])
    pred = classify(np.array([0.0, 0.0]), base)
    assert pred.runner_up_label is None
    assert pred.runner_up_distance == math.inf


def _oracle_classify(q, entries):
    """Linear scan with first-minimum tie rule, independent implementation."""
    best_i = None
    best_d = None
    for i, (label, v) in enumerate(entries):
        d = math.sqrt(sum((a - b) ** 2 for a, b in zip(q, v)))
        if best_d is None or d < best_d:
            best_i, best_d = i, d
    return entries[best_i][0], best_d


def test_matches_brute_force_oracle_including_ties():
    rng = np.random.default_rng(52)
    entries = []
    for i in range(40):
        entries.append((f"c{rng.integers(0, 8)}", rng.integers(-4, 5, 6).astype(float)))
    # deliberate duplicates create exact ties
    entries += [(f"dup{i}", entries[i][1].copy()) for i in range(5)]
    base = FeatureBase([LabeledFeature(l, v) for l, v in entries])
    for _ in range(300):
        q = rng.integers(-4, 5, 6).astype(float)
        got = classify(q, base)
        want_label, want_d = _oracle_classify(q, entries)
        assert got.label == want_label
        assert got.distance == pytest.approx(want_d, abs=1e-12)


def test_prediction_invariant_under_base_permutation_without_ties():
    rng = np.random.default_rng(53)
    vecs = rng.normal(0, 1, (20, 5))
    labels = [f"k{i}" for i in range(20)]
    base = FeatureBase([LabeledFeature(l, v) for l, v in zip(labels, vecs)])
    perm = rng.permutation(20)
    base_p = FeatureBase([LabeledFeature(labels[i], vecs[i]) for i in perm])
    for _ in range(50):
        q = rng.normal(0, 1, 5)
        assert classify(q, base).label == classify(q, base_p).label


def test_far_entry_never_changes_prediction():
    rng = np.random.default_rng(54)
    vecs = rng.normal(0, 1, (10, 4))
    base = FeatureBase([LabeledFeature(f"k{i}", v) for i, v in enumerate(vecs)])
    for _ in range(20):
        q = rng.normal(0, 1, 4)
        pred = classify(q, base)
        far = q + 1000.0
        base2 = FeatureBase(base.entries + [LabeledFeature("far", far)])
        assert classify(q, base2).label == pred.label


def test_evaluate_perfect_and_confusion():
    base = _base([("A", (0, 0)), ("B", (4, 4)), ("C", (9, 0))])
    queries = [LabeledFeature(l, np.array(v, float)) for l, v in
               [("A", (0.1, 0)), ("B", (4, 4.2)), ("C", (8.8, 0))]]
    r = evaluate(queries, base)
    assert r.recognition_rate == 1.0
    assert np.array_equal(r.confusion, np.eye(3, dtype=int))


def test_evaluate_wrong_single_query():
    base = _base([("A", (0, 0)), ("B", (10, 0))])
    queries = [LabeledFeature("B", np.array([1.0, 0.0]))]
    r = evaluate(queries, base)
    assert r.recognition_rate == 0.0
    assert r.confusion[r.labels.index("B"), r.labels.index("A")] == 1


def test_evaluate_row_sums_match_query_counts():
    rng = np.random.default_rng(55)
    base = _base([(f"c{i}", rng.normal(0, 1, 3)) for i in range(6)])
    queries = [LabeledFeature(f"c{rng.integers(0, 6)}", rng.normal(0, 1, 3)) for _ in range(40)]
    r = evaluate(queries, base)
    for i, lab in enumerate(r.labels):
        assert r.confusion[i].sum() == sum(q.label == lab for q in queries)


def test_evaluate_uses_injected_clock():
    base = _base([("A", (0, 0))])
    queries = [LabeledFeature("A", np.zeros(2)) for _ in range(4)]
    ticks = iter([10.0, 12.0])
    r = evaluate(queries, base, clock=lambda: next(ticks))
    assert r.mean_time == pytest.approx(0.5)


def test_evaluate_empty_queries():
    base = _base([("A", (0, 0))])
    with pytest.raises(InvalidInput):
        evaluate([], base)


def test_base_rejects_mixed_dims_and_nonfinite():
    with pytest.raises(DimensionError):
        FeatureBase([LabeledFeature("a", np.zeros(2)), LabeledFeature("b", np.zeros(3))])
    with pytest.raises(InvalidInput):
        FeatureBase([LabeledFeature("a", np.array([np.nan, 1.0]))])
