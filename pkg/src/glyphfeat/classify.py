"""Euclidean minimum-distance (nearest neighbor) classification."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, EmptyBase, InvalidInput


@dataclass(frozen=True)
class LabeledFeature:
    label: str
    vector: np.ndarray
    source_id: str = ""


@dataclass
class FeatureBase:
    """Immutable labeled feature collection with a cached matrix."""

    entries: list[LabeledFeature]
    dim: int = field(init=False)
    _matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not self.entries:
            raise EmptyBase("feature base needs at least one entry")
        dims = {len(e.vector) for e in self.entries}
        if len(dims) != 1:
            raise DimensionError(f"mixed vector lengths in base: {sorted(dims)}")
        self.dim = dims.pop()
        if self.dim == 0:
            raise InvalidInput("feature vectors must be non-empty")
        self._matrix = np.array([e.vector for e in self.entries], dtype=float)
        if not np.all(np.isfinite(self._matrix)):
            raise InvalidInput("feature base contains non-finite values")

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class Prediction:
    label: str
    distance: float
    runner_up_label: str | None
    runner_up_distance: float


def euclidean_distance(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DimensionError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.sqrt(np.sum((x - y) ** 2)))


def classify(x, base: FeatureBase) -> Prediction:
    """Nearest base entry by Euclidean distance; ties go to the lowest index."""
    q = np.asarray(x, dtype=float)
    if q.ndim != 1 or len(q) != base.dim:
        raise DimensionError(f"query has length {q.size}, base has {base.dim}")
    d = np.sqrt(((base._matrix - q) ** 2).sum(axis=1))
    best = int(np.argmin(d))
    if len(d) > 1:
        d2 = d.copy()
        d2[best] = math.inf
        second = int(np.argmin(d2))
        runner_label, runner_dist = base.entries[second].label, float(d[second])
    else:
        runner_label, runner_dist = None, math.inf
    return Prediction(
        label=base.entries[best].label,
        distance=float(d[best]),
        runner_up_label=runner_label,
        runner_up_distance=runner_dist,
    )


@dataclass(frozen=True)
class Evaluation:
    recognition_rate: float
    labels: tuple[str, ...]
    confusion: np.ndarray  # confusion[i, j] = true labels[i] predicted labels[j]
    mean_time: float  # seconds per classified query


def evaluate(queries: list[LabeledFeature], base: FeatureBase, clock=time.perf_counter) -> Evaluation:
    """Classify every query; returns rate, confusion matrix and mean time.

    Only the classification calls are timed; feature extraction happens
    upstream and is timed separately by the benchmark harness.
    """
    if not queries:
        raise InvalidInput("no queries to evaluate")
    labels = tuple(sorted({e.label for e in base.entries} | {q.label for q in queries}))
    index = {lab: i for i, lab in enumerate(labels)}
    confusion = np.zeros((len(labels), len(labels)), dtype=np.int64)
    correct = 0
    t0 = clock()
    predictions = [classify(q.vector, base) for q in queries]
    elapsed = clock() - t0
    for q, pred in zip(queries, predictions):
        confusion[index[q.label], index[pred.label]] += 1
        if pred.label == q.label:
            correct += 1
    return Evaluation(
        recognition_rate=correct / len(queries),
        labels=labels,
        confusion=confusion,
        mean_time=elapsed / len(queries),
    )
