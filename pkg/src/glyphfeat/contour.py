"""Outer-boundary tracing and Freeman chain coding.

Directions follow the 8-code convention: code 0 points along +x and codes
increase counterclockwise in mathematical orientation.  Because rasters are
stored y-down, a mathematically counterclockwise boundary reads clockwise on
screen; code 2 therefore steps toward smaller y.  Step length is 1 for even
codes and sqrt(2) for odd codes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import InvalidContour, InvalidInput
from .raster import ConnectedComponent, component_mask

# (dx, dy) per Freeman code, y-down raster coordinates
CODE_STEPS = ((1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1))
_STEP_TO_CODE = {step: code for code, step in enumerate(CODE_STEPS)}

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Contour:
    """Ordered boundary pixels; closed means last point links back to first."""

    points: np.ndarray  # (n, 2) int array of (x, y)
    closed: bool = True


@dataclass(frozen=True)
class ChainCode:
    start: tuple[int, int]
    codes: np.ndarray  # ints in 0..7


@dataclass(frozen=True)
class ContourParam:
    """Piecewise-linear periodic parameterization of a closed contour.

    ``xs``/``ys`` hold the n+1 vertex coordinates including the closing
    point; ``ts`` holds the cumulative path length at each vertex, with
    ts[0] = 0 and ts[-1] = T.
    """

    xs: np.ndarray
    ys: np.ndarray
    ts: np.ndarray

    @property
    def total_length(self) -> float:
        return float(self.ts[-1])

    def eval(self, t):
        """Sample x(t), y(t) at arbitrary parameter values (periodic)."""
        tt = np.mod(np.asarray(t, dtype=float), self.ts[-1])
        return np.interp(tt, self.ts, self.xs), np.interp(tt, self.ts, self.ys)


# Neighbor slots scanned clockwise on screen starting at West.
_SLOT_DX = np.array([-1, -1, 0, 1, 1, 1, 0, -1], dtype=np.int64)
_SLOT_DY = np.array([0, -1, -1, -1, 0, 1, 1, 1], dtype=np.int64)
# slot index for a (dx+1, dy+1) pair
_DELTA_SLOT = np.full((3, 3), -1, dtype=np.int64)
for _s in range(8):
    _DELTA_SLOT[_SLOT_DX[_s] + 1, _SLOT_DY[_s] + 1] = _s


@njit(cache=True)
def _moore_walk(mask, sx, sy, slot_dx, slot_dy, delta_slot):  # pragma: no cover - jitted
    h, w = mask.shape
    cap = 8 * w * h + 8
    pts = np.empty((cap, 2), dtype=np.int64)
    seen = np.zeros(w * h * 8, dtype=np.int32)  # 1 + index into pts, 0 = unseen
    x, y = sx, sy
    b = 0  # backtrack slot, initially West
    n = 0
    while True:
        state = (y * w + x) * 8 + b
        if seen[state] != 0:
            first = seen[state] - 1
            return pts[first:n]
        seen[state] = n + 1
        pts[n, 0] = x
        pts[n, 1] = y
        n += 1
        moved = False
        for k in range(1, 9):
            slot = (b + k) % 8
            nx = x + slot_dx[slot]
            ny = y + slot_dy[slot]
            if 0 <= nx < w and 0 <= ny < h and mask[ny, nx]:
                prev_slot = (b + k - 1) % 8
                bx = x + slot_dx[prev_slot]
                by = y + slot_dy[prev_slot]
                x, y = nx, ny
                b = delta_slot[bx - x + 1, by - y + 1]
                moved = True
                break
        if not moved:
            return pts[:n]


def trace_contour(img, comp: ConnectedComponent, connectivity: int = 8) -> Contour:
    """Trace the outer boundary of a component.

    Moore-neighbor tracing from the component's uppermost-leftmost pixel,
    stopping by Jacob's criterion (revisiting the start state).  Holes are
    ignored; only the outer boundary is returned.
    """
    if comp.area < 1:
        raise InvalidInput("cannot trace an empty component")
    mask = component_mask(img, comp, connectivity)
    x0, y0, x1, y1 = comp.bbox
    crop = np.ascontiguousarray(mask[y0 : y1 + 1, x0 : x1 + 1].astype(np.uint8))
    flat = crop.ravel()
    first = int(flat.argmax())
    if not flat[first]:
        raise InvalidInput("component has no pixels")
    sy, sx = divmod(first, crop.shape[1])
    pts = np.asarray(_moore_walk(crop, sx, sy, _SLOT_DX, _SLOT_DY, _DELTA_SLOT))
    pts[:, 0] += x0
    pts[:, 1] += y0
    return Contour(points=pts, closed=True)


# code for a (dx+1, dy+1) step; -1 marks non-neighbor steps
_DELTA_CODE = np.full((3, 3), -1, dtype=np.int64)
for _c, (_dx, _dy) in enumerate(CODE_STEPS):
    _DELTA_CODE[_dx + 1, _dy + 1] = _c


def to_chain_code(c: Contour) -> ChainCode:
    """Freeman codes of the directions between consecutive contour points."""
    pts = np.asarray(c.points)
    n = len(pts)
    start = (int(pts[0, 0]), int(pts[0, 1]))
    if n == 1:
        return ChainCode(start=start, codes=np.empty(0, dtype=np.int64))
    nxt = np.roll(pts, -1, axis=0) if c.closed else pts[1:]
    cur = pts if c.closed else pts[:-1]
    dx = nxt[:, 0] - cur[:, 0]
    dy = nxt[:, 1] - cur[:, 1]
    if np.abs(dx).max() > 1 or np.abs(dy).max() > 1:
        bad = int(np.argmax((np.abs(dx) > 1) | (np.abs(dy) > 1)))
        raise InvalidContour(f"points {bad} and {bad+1} are not 8-neighbors")
    codes = _DELTA_CODE[dx + 1, dy + 1]
    if codes.min() < 0:
        bad = int(np.argmin(codes))
        raise InvalidContour(f"points {bad} and {bad+1} coincide")
    return ChainCode(start=start, codes=codes)


_CODE_STEP_ARR = np.array(CODE_STEPS, dtype=np.int64)


def chain_to_points(cc: ChainCode) -> np.ndarray:
    """Rebuild the (n+1, 2) closed vertex sequence from start + codes."""
    pts = np.empty((len(cc.codes) + 1, 2), dtype=np.int64)
    pts[0] = cc.start
    if len(cc.codes):
        steps = _CODE_STEP_ARR[np.asarray(cc.codes)]
        np.cumsum(steps, axis=0, out=pts[1:])
        pts[1:] += cc.start
    return pts


def code_lengths(codes) -> np.ndarray:
    """Step length per code: 1 for even codes, sqrt(2) for odd."""
    codes = np.asarray(codes)
    return np.where(codes % 2 == 0, 1.0, SQRT2)


def parameterize(cc: ChainCode) -> ContourParam:
    """Arc-length parameterization x(t), y(t) of a chain-coded contour."""
    if len(cc.codes) == 0:
        raise InvalidInput("cannot parameterize an empty chain code")
    pts = chain_to_points(cc)
    lengths = code_lengths(cc.codes)
    ts = np.concatenate([[0.0], np.cumsum(lengths)])
    return ContourParam(xs=pts[:, 0].astype(float), ys=pts[:, 1].astype(float), ts=ts)
