"""Geometric glyph transforms for the invariance experiments.

Composition order is fixed: scale about the ink gravity center, then rotate
about it, then translate by integer offsets.  Resampling is nearest-neighbor
so images stay strictly binary; an identity spec returns a bitwise-equal
copy, and pure integer translations are exactly invertible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, TransformClipsInk
from .raster import as_binary

SCALE_MIN = 0.25
SCALE_MAX = 4.0


@dataclass(frozen=True)
class TransformSpec:
    rotation_deg: float = 0.0
    dx: int = 0
    dy: int = 0
    scale: float = 1.0

    def __post_init__(self):
        if not (SCALE_MIN <= self.scale <= SCALE_MAX):
            raise InvalidParameter(f"scale must lie in [{SCALE_MIN}, {SCALE_MAX}]")

    @property
    def is_identity(self) -> bool:
        return self.rotation_deg == 0.0 and self.dx == 0 and self.dy == 0 and self.scale == 1.0

    def describe(self) -> str:
        if self.is_identity:
            return "identity"
        parts = []
        if self.scale != 1.0:
            parts.append(f"scale{self.scale:g}")
        if self.rotation_deg != 0.0:
            parts.append(f"rot{self.rotation_deg:g}")
        if self.dx or self.dy:
            parts.append(f"tr{self.dx}x{self.dy}")
        return "+".join(parts)


def _shift_int(mask: np.ndarray, dx: int, dy: int) -> np.ndarray:
    h, w = mask.shape
    ys, xs = np.nonzero(mask)
    nx = xs + dx
    ny = ys + dy
    if len(xs) and (nx.min() < 0 or ny.min() < 0 or nx.max() >= w or ny.max() >= h):
        raise TransformClipsInk(f"translation ({dx}, {dy}) moves ink off the image")
    out = np.zeros_like(mask)
    out[ny, nx] = True
    return out


def apply_transform(img, t: TransformSpec) -> np.ndarray:
    """Transform a binary glyph image; raises TransformClipsInk when ink leaves the frame."""
    mask = as_binary(img)
    if t.rotation_deg == 0.0 and t.scale == 1.0:
        if t.dx == 0 and t.dy == 0:
            return mask.copy()
        return _shift_int(mask, t.dx, t.dy)

    h, w = mask.shape
    ys, xs = np.nonzero(mask)
    if len(xs) == 0:
        return mask.copy()
    cx = xs.mean()
    cy = ys.mean()
    phi = math.radians(t.rotation_deg)
    c, s = math.cos(phi), math.sin(phi)

    # forward-map ink pixels to check nothing leaves the frame
    fx = xs - cx
    fy = ys - cy
    gx = t.scale * (fx * c - fy * s) + cx + t.dx
    gy = t.scale * (fx * s + fy * c) + cy + t.dy
    if (
        np.rint(gx).min() < 0
        or np.rint(gy).min() < 0
        or np.rint(gx).max() >= w
        or np.rint(gy).max() >= h
    ):
        raise TransformClipsInk(f"transform {t.describe()} moves ink off the image")

    # inverse-map every output pixel (nearest neighbor)
    oy, ox = np.mgrid[0:h, 0:w]
    qx = (ox - cx - t.dx).astype(float)
    qy = (oy - cy - t.dy).astype(float)
    px = (qx * c + qy * s) / t.scale + cx
    py = (-qx * s + qy * c) / t.scale + cy
    ix = np.rint(px).astype(int)
    iy = np.rint(py).astype(int)
    valid = (ix >= 0) & (ix < w) & (iy >= 0) & (iy < h)
    out = np.zeros_like(mask)
    out[valid] = mask[iy[valid], ix[valid]]
    return out
