"""Feature vector CSV interchange.

Header: ``source_id,label,dim,v0,v1,...`` with one fixed dimension per file;
floats are written with 9 significant digits.
"""
from __future__ import annotations

import csv

import numpy as np

from .classify import LabeledFeature
from .errors import ManifestError


def write_features(entries: list[LabeledFeature], path) -> None:
    if not entries:
        raise ManifestError("no feature rows to write")
    dims = {len(e.vector) for e in entries}
    if len(dims) != 1:
        raise ManifestError(f"mixed feature dimensions {sorted(dims)} in one file")
    dim = dims.pop()
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["source_id", "label", "dim"] + [f"v{i}" for i in range(dim)])
        for e in entries:
            writer.writerow([e.source_id, e.label, dim] + [f"{v:.9g}" for v in e.vector])


def read_features(path) -> list[LabeledFeature]:
    entries = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ManifestError(f"{path}: empty feature file")
        if header[:3] != ["source_id", "label", "dim"]:
            raise ManifestError(f"{path}: bad feature header {header[:3]!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            sid, label, dim = row[0], row[1], int(row[2])
            vals = row[3:]
            if len(vals) != dim:
                raise ManifestError(f"{path}:{lineno}: dim says {dim} but row has {len(vals)} values")
            entries.append(LabeledFeature(label=label, vector=np.array([float(v) for v in vals]), source_id=sid))
    if not entries:
        raise ManifestError(f"{path}: no feature rows")
    return entries
