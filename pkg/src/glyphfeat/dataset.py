"""Manifest-driven dataset loading and writing.

A manifest is a CSV with header ``image_path,label,writer_id,split`` whose
image paths (PGM files) are resolved relative to the manifest's directory.
Loaded pages are binarized with Otsu, which recovers exact ink masks for
the 0/255 images the synthesizer writes.
"""
from __future__ import annotations

import csv
import os

from .errors import ManifestError
from .pnm import read_pgm, write_pgm
from .raster import binarize_otsu
from .synth import DatasetItem

MANIFEST_HEADER = ["image_path", "label", "writer_id", "split"]
SPLITS = ("train", "test")


def load_dataset(manifest_path) -> list[DatasetItem]:
    """Decode every manifest row into a DatasetItem, in file order."""
    base = os.path.dirname(os.path.abspath(manifest_path))
    items = []
    with open(manifest_path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ManifestError(f"{manifest_path}: empty manifest")
        if [h.strip() for h in header] != MANIFEST_HEADER:
            raise ManifestError(
                f"{manifest_path}: bad header {header!r}, expected {MANIFEST_HEADER}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ManifestError(f"{manifest_path}:{lineno}: expected 4 fields, got {len(row)}")
            path, label, _writer, split = (v.strip() for v in row)
            if not label:
                raise ManifestError(f"{manifest_path}:{lineno}: empty label")
            if split not in SPLITS:
                raise ManifestError(
                    f"{manifest_path}:{lineno}: unknown split {split!r} (expected train or test)"
                )
            full = path if os.path.isabs(path) else os.path.join(base, path)
            try:
                gray = read_pgm(full)
            except (OSError, ValueError) as e:
                raise ManifestError(f"{manifest_path}:{lineno}: cannot read {path!r}: {e}")
            items.append(
                DatasetItem(image=binarize_otsu(gray), label=label, split=split, source_id=path)
            )
    return items


def write_dataset(items: list[DatasetItem], out_dir) -> str:
    """Write items as PGM files plus manifest.csv; returns the manifest path.

    Items re-listed across splits (same source_id) share one image file.
    """
    os.makedirs(out_dir, exist_ok=True)
    manifest = os.path.join(out_dir, "manifest.csv")
    written = set()
    with open(manifest, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(MANIFEST_HEADER)
        for it in items:
            fname = f"{it.source_id}.pgm"
            if fname not in written:
                # ink is dark: foreground 0, background 255
                write_pgm(os.path.join(out_dir, fname), (~it.image).astype("uint8") * 255)
                written.add(fname)
            writer.writerow([fname, it.label, "w000", it.split])
    return manifest
