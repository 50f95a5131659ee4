"""Raster containers, binarization, connected components and page metrics.

Images are plain numpy arrays indexed ``img[y, x]``: grayscale pages are 2-D
arrays of intensities in [0, 255], binary images are 2-D boolean arrays where
True marks ink (foreground).  All coordinates exposed by this module are
(x, y) pairs with y growing downward.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import InvalidInput, InvalidParameter

SAUVOLA_R = 128.0  # dynamic range of the standard deviation

_STRUCT4 = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=int)
_STRUCT8 = np.ones((3, 3), dtype=int)


@dataclass(frozen=True)
class ConnectedComponent:
    """One 8- or 4-connected blob of ink.

    ``bbox`` is (x0, y0, x1, y1) with inclusive bounds; ``gravity_center``
    is the mean of the component's pixel coordinates; ``seed`` is the
    component's first foreground pixel in row-major order, usable to
    re-identify the component in a fresh labeling of the same image.
    """

    id: int
    bbox: tuple[int, int, int, int]
    area: int
    gravity_center: tuple[float, float]
    seed: tuple[int, int]

    @property
    def height(self) -> int:
        return self.bbox[3] - self.bbox[1] + 1

    @property
    def width(self) -> int:
        return self.bbox[2] - self.bbox[0] + 1


@dataclass(frozen=True)
class PageMetrics:
    """Average character height/width of a page; width is assumed equal to height."""

    avg_height: float
    avg_width: float


def _check_gray(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.size == 0:
        raise InvalidInput("grayscale image must be a non-empty 2-D array")
    return arr.astype(np.int64, copy=False)


def as_binary(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise InvalidInput("binary image must be a 2-D array")
    return arr.astype(bool, copy=False)


def otsu_threshold(img) -> int:
    """Histogram bin t maximizing between-class variance; ink is intensity <= t."""
    arr = _check_gray(img)
    hist = np.bincount(arr.ravel(), minlength=256).astype(np.float64)
    total = hist.sum()
    w0 = np.cumsum(hist)
    w1 = total - w0
    cum = np.cumsum(hist * np.arange(256))
    mu0 = np.divide(cum, w0, out=np.zeros(256), where=w0 > 0)
    mu1 = np.divide(cum[-1] - cum, w1, out=np.zeros(256), where=w1 > 0)
    score = w0 * w1 * (mu0 - mu1) ** 2
    return int(np.argmax(score[:255]))


def binarize_otsu(img) -> np.ndarray:
    """Global thresholding; foreground = pixels at or below the Otsu bin."""
    arr = _check_gray(img)
    return arr <= otsu_threshold(arr)


def _window_sums(arr: np.ndarray, window: int):
    """Integer sums and squared sums over clipped window x window neighborhoods."""
    h, w = arr.shape
    r = window // 2
    pad = np.zeros((h + 1, w + 1), dtype=np.int64)
    pad[1:, 1:] = arr
    ii = pad.cumsum(0).cumsum(1)
    pad2 = np.zeros((h + 1, w + 1), dtype=np.int64)
    pad2[1:, 1:] = arr * arr
    ii2 = pad2.cumsum(0).cumsum(1)
    ys = np.arange(h)
    xs = np.arange(w)
    y0 = np.clip(ys - r, 0, h)[:, None]
    y1 = np.clip(ys + r + 1, 0, h)[:, None]
    x0 = np.clip(xs - r, 0, w)[None, :]
    x1 = np.clip(xs + r + 1, 0, w)[None, :]
    s = ii[y1, x1] - ii[y0, x1] - ii[y1, x0] + ii[y0, x0]
    s2 = ii2[y1, x1] - ii2[y0, x1] - ii2[y1, x0] + ii2[y0, x0]
    area = (y1 - y0) * (x1 - x0)
    return s, s2, area


def sauvola_threshold_map(img, window: int = 31, k: float = 0.2) -> np.ndarray:
    """Per-pixel Sauvola thresholds t = m * (1 + k * (s / R - 1)).

    The local mean m and standard deviation s are taken over the window
    clipped to the image bounds.  ``window`` must be odd and >= 3.
    """
    arr = _check_gray(img)
    if window < 3 or window % 2 == 0:
        raise InvalidParameter(f"sauvola window must be odd and >= 3, got {window}")
    s, s2, area = _window_sums(arr, window)
    mean = s / area
    var = s2 / area - mean * mean
    std = np.sqrt(np.maximum(var, 0.0))
    return mean * (1.0 + k * (std / SAUVOLA_R - 1.0))


def binarize_sauvola(img, window: int = 31, k: float = 0.2) -> np.ndarray:
    """Adaptive thresholding; foreground = pixels strictly below the local threshold."""
    arr = _check_gray(img)
    return arr < sauvola_threshold_map(arr, window, k)


def binarize(img, method: str = "otsu", window: int = 31, k: float = 0.2) -> np.ndarray:
    """Binarize a grayscale image with ``otsu`` (global) or ``sauvola`` (adaptive)."""
    if method == "otsu":
        return binarize_otsu(img)
    if method == "sauvola":
        return binarize_sauvola(img, window=window, k=k)
    raise InvalidParameter(f"unknown binarization method {method!r}")


def label_map(img, connectivity: int = 8):
    """scipy labeling of a binary image; returns (labels array, count)."""
    mask = as_binary(img)
    if connectivity == 8:
        structure = _STRUCT8
    elif connectivity == 4:
        structure = _STRUCT4
    else:
        raise InvalidParameter(f"connectivity must be 4 or 8, got {connectivity}")
    if mask.size == 0:
        return np.zeros_like(mask, dtype=np.int32), 0
    labels, count = ndimage.label(mask, structure=structure)
    return labels, count


def connected_components(img, connectivity: int = 8) -> list[ConnectedComponent]:
    """Extract components sorted by (y0, x0), relabeled densely from 1."""
    mask = as_binary(img)
    labels, count = label_map(mask, connectivity)
    if count == 0:
        return []
    ys, xs = np.nonzero(mask)
    lab = labels[ys, xs]
    areas = np.bincount(lab, minlength=count + 1)
    sum_x = np.bincount(lab, weights=xs, minlength=count + 1)
    sum_y = np.bincount(lab, weights=ys, minlength=count + 1)
    order = np.argsort(lab, kind="stable")
    slices = ndimage.find_objects(labels)
    comps = []
    for lid in range(1, count + 1):
        sl = slices[lid - 1]
        bbox = (sl[1].start, sl[0].start, sl[1].stop - 1, sl[0].stop - 1)
        first = order[np.searchsorted(lab[order], lid)]
        comps.append(
            (
                bbox[1],
                bbox[0],
                ConnectedComponent(
                    id=0,
                    bbox=bbox,
                    area=int(areas[lid]),
                    gravity_center=(sum_x[lid] / areas[lid], sum_y[lid] / areas[lid]),
                    seed=(int(xs[first]), int(ys[first])),
                ),
            )
        )
    comps.sort(key=lambda t: (t[0], t[1]))
    out = []
    for i, (_, _, c) in enumerate(comps, start=1):
        out.append(
            ConnectedComponent(
                id=i, bbox=c.bbox, area=c.area, gravity_center=c.gravity_center, seed=c.seed
            )
        )
    return out


def component_mask(img, comp: ConnectedComponent, connectivity: int = 8) -> np.ndarray:
    """Boolean mask of the pixels belonging to one component."""
    mask = as_binary(img)
    sx, sy = comp.seed
    if not (0 <= sy < mask.shape[0] and 0 <= sx < mask.shape[1]) or not mask[sy, sx]:
        raise InvalidInput("component seed does not hit foreground in this image")
    labels, _ = label_map(mask, connectivity)
    return labels == labels[sy, sx]


def page_metrics(components: list[ConnectedComponent]) -> PageMetrics:
    """Average character height over all components; width assumed equal."""
    if not components:
        raise InvalidInput("page metrics need at least one component")
    avg_h = float(np.mean([c.height for c in components]))
    return PageMetrics(avg_height=avg_h, avg_width=avg_h)


def gravity_center(img, comp: ConnectedComponent, connectivity: int = 8) -> tuple[float, float]:
    """Mean (x, y) of the component's foreground pixels."""
    mask = component_mask(img, comp, connectivity)
    ys, xs = np.nonzero(mask)
    if len(xs) == 0:
        raise InvalidInput("component has no pixels")
    return float(xs.mean()), float(ys.mean())
