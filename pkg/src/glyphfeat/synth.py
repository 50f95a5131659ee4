"""Seeded synthetic glyph and page generators.

Stands in for a handwriting corpus: each class is a fixed stroke program
(polyline or dotted skeleton, covering a bar, hooks, a loop and dotted
forms), rendered with per-sample control-point jitter and stroke-width
variation driven entirely by the seed.  Identical (seed, arguments) produce
byte-identical images.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter

DEFAULT_CANVAS = 128
DEFAULT_JITTER = 1.5
BASE_STROKE_WIDTH = 3


def _circle(cx, cy, r, n=16):
    pts = [(cx + r * math.cos(2 * math.pi * k / n), cy + r * math.sin(2 * math.pi * k / n)) for k in range(n)]
    return pts + [pts[0]]


def _arc(cx, cy, r, a0, a1, n=10):
    return [
        (cx + r * math.cos(a0 + (a1 - a0) * k / (n - 1)), cy + r * math.sin(a0 + (a1 - a0) * k / (n - 1)))
        for k in range(n)
    ]


# (name, list of strokes); a stroke is ("poly", points) or ("dot", (u, v))
CLASS_PROGRAMS = [
    ("bar", [("poly", [(0.5, 0.1), (0.5, 0.9)])]),
    ("bowl_dot", [("poly", [(0.15, 0.35), (0.2, 0.55), (0.5, 0.65), (0.8, 0.55), (0.85, 0.35)]),
                  ("dot", (0.5, 0.85))]),
    ("hook", [("poly", [(0.65, 0.1), (0.65, 0.5), (0.55, 0.68), (0.35, 0.72), (0.22, 0.6)])]),
    ("loop", [("poly", _circle(0.5, 0.5, 0.3))]),
    ("zig", [("poly", [(0.2, 0.15), (0.75, 0.35), (0.25, 0.6), (0.8, 0.85)])]),
    ("cross", [("poly", [(0.5, 0.1), (0.5, 0.9)]), ("poly", [(0.1, 0.5), (0.9, 0.5)])]),
    ("wave", [("poly", [(0.1, 0.5), (0.25, 0.3), (0.4, 0.5), (0.55, 0.7), (0.7, 0.5), (0.85, 0.3)])]),
    ("vee", [("poly", [(0.15, 0.2), (0.5, 0.85), (0.85, 0.2)])]),
    ("ell", [("poly", [(0.25, 0.1), (0.25, 0.75), (0.85, 0.75)])]),
    ("arc_dots", [("poly", _arc(0.5, 0.55, 0.32, math.pi, 2 * math.pi)),
                  ("dot", (0.35, 0.75)), ("dot", (0.65, 0.75))]),
]


@dataclass(frozen=True)
class DatasetItem:
    image: np.ndarray  # boolean ink mask
    label: str
    split: str  # "train" or "test"
    source_id: str


def _disk_offsets(radius: float):
    r = int(math.ceil(radius))
    offs = []
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            if dx * dx + dy * dy <= radius * radius:
                offs.append((dx, dy))
    return np.array(offs, dtype=int)


def _stamp(mask: np.ndarray, x: float, y: float, offsets: np.ndarray):
    h, w = mask.shape
    px = int(round(x)) + offsets[:, 0]
    py = int(round(y)) + offsets[:, 1]
    keep = (px >= 0) & (px < w) & (py >= 0) & (py < h)
    mask[py[keep], px[keep]] = True


def _draw_polyline(mask: np.ndarray, pts, width: float):
    offsets = _disk_offsets(width / 2.0)
    for (x0, y0), (x1, y1) in zip(pts[:-1], pts[1:]):
        dist = math.hypot(x1 - x0, y1 - y0)
        steps = max(2, int(dist / 0.4) + 1)
        for k in range(steps):
            t = k / (steps - 1)
            _stamp(mask, x0 + t * (x1 - x0), y0 + t * (y1 - y0), offsets)


def render_glyph(program, canvas: int, rng: np.random.Generator, jitter: float,
                 scale: float = 1.0) -> np.ndarray:
    """Render one stroke program onto a square canvas.

    Unit coordinates map into a centered box of side 0.56 * canvas * scale;
    control points are jittered by a normal of the given sigma (pixels) and
    the stroke width varies by one pixel around the base width.
    """
    mask = np.zeros((canvas, canvas), dtype=bool)
    box = 0.56 * canvas * scale
    org = (canvas - box) / 2.0
    width = BASE_STROKE_WIDTH + int(rng.integers(-1, 2))
    for stroke in program:
        if stroke[0] == "poly":
            pts = []
            for (u, v) in stroke[1]:
                jx = rng.normal(0.0, jitter) if jitter > 0 else 0.0
                jy = rng.normal(0.0, jitter) if jitter > 0 else 0.0
                pts.append((org + u * box + jx, org + v * box + jy))
            _draw_polyline(mask, pts, width)
        else:
            (u, v) = stroke[1]
            jx = rng.normal(0.0, jitter) if jitter > 0 else 0.0
            jy = rng.normal(0.0, jitter) if jitter > 0 else 0.0
            _stamp(mask, org + u * box + jx, org + v * box + jy, _disk_offsets(0.02 * canvas + width / 2.0))
    return mask


def class_names(n_classes: int) -> list[str]:
    if n_classes < 2:
        raise InvalidParameter("need at least 2 classes")
    if n_classes > len(CLASS_PROGRAMS):
        raise InvalidParameter(f"at most {len(CLASS_PROGRAMS)} stroke programs are defined")
    return [name for name, _ in CLASS_PROGRAMS[:n_classes]]


def synth_glyphs(
    seed: int,
    n_classes: int,
    samples_per_class: int,
    canvas: int = DEFAULT_CANVAS,
    jitter: float = DEFAULT_JITTER,
    split: str = "train",
    id_prefix: str = "",
) -> list[DatasetItem]:
    """Deterministic glyph set: class-major, sample-minor generation order."""
    if samples_per_class < 1:
        raise InvalidParameter("need at least 1 sample per class")
    if canvas < 32:
        raise InvalidParameter("canvas too small for the stroke programs")
    names = class_names(n_classes)
    rng = np.random.default_rng(seed)
    items = []
    for name, program in CLASS_PROGRAMS[: len(names)]:
        for i in range(samples_per_class):
            img = render_glyph(program, canvas, rng, jitter)
            items.append(
                DatasetItem(
                    image=img,
                    label=name,
                    split=split,
                    source_id=f"{id_prefix}{split}_{name}_{i:04d}",
                )
            )
    return items


def make_benchmark_dataset(
    seed: int,
    n_classes: int = 10,
    train_per_class: int = 70,
    fresh_test_per_class: int = 98,
    canvas: int = DEFAULT_CANVAS,
    jitter: float = DEFAULT_JITTER,
) -> list[DatasetItem]:
    """Train pool plus a test split that re-lists the train pool and adds fresh samples.

    Mirrors a base/test protocol where every training image also appears in
    the test set alongside previously unseen images.
    """
    train = synth_glyphs(seed, n_classes, train_per_class, canvas, jitter, split="train")
    relisted = [
        DatasetItem(image=it.image, label=it.label, split="test", source_id=it.source_id)
        for it in train
    ]
    fresh = synth_glyphs(seed + 1, n_classes, fresh_test_per_class, canvas, jitter, split="test", id_prefix="fresh_")
    return train + relisted + fresh


def make_line_page(
    n_lines: int,
    blobs_per_line: int = 10,
    skew_deg: float = 0.0,
    pitch: int = 60,
):
    """Synthetic page of word-like blobs with known line membership.

    Returns (mask, centers, rows): one entry per blob, where rows[i] is the
    ground-truth line index of the blob centered at centers[i].  Blob sizes
    cycle through a few width/height combinations wide enough to qualify as
    subset-1 components; positive skew tilts lines upward to the right.
    """
    if n_lines < 1 or blobs_per_line < 1:
        raise InvalidParameter("need at least one line and one blob")
    heights = [16, 18, 20, 22]
    widths = [36, 40, 44]
    gap = 16
    left = 50
    slot = max(widths) + gap
    page_w = 2 * left + blobs_per_line * slot
    tilt = math.tan(math.radians(skew_deg))
    top = 70 + int(abs(tilt) * page_w)
    page_h = top + (n_lines - 1) * pitch + 70 + int(abs(tilt) * page_w)
    mask = np.zeros((page_h, page_w), dtype=bool)
    centers = []
    rows = []
    k = 0
    for r in range(n_lines):
        for b in range(blobs_per_line):
            h = heights[k % len(heights)]
            w = widths[k % len(widths)]
            cx = left + b * slot + slot // 2
            cy = top + r * pitch - tilt * cx
            y0 = int(round(cy - h / 2))
            x0 = int(round(cx - w / 2))
            mask[y0 : y0 + h, x0 : x0 + w] = True
            centers.append((cx, cy))
            rows.append(r)
            k += 1
    return mask, np.array(centers, dtype=float), np.array(rows, dtype=int)
