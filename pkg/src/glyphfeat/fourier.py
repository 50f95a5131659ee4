"""Elliptic Fourier descriptors of chain-coded contours.

Coefficients are the exact integrals of the piecewise-linear x(t), y(t)
against cos/sin of each harmonic over one period (closed form per segment,
no numerical quadrature).  The DC terms are the means of x(t) and y(t); the
feature vector drops them, which makes it exactly translation invariant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .contour import ContourParam
from .errors import InvalidParameter

DEFAULT_HARMONICS = 20


@dataclass(frozen=True)
class FourierDescriptor:
    a0: float  # mean of x(t)
    c0: float  # mean of y(t)
    harmonics: np.ndarray  # (n, 4) rows of (a_n, b_n, c_n, d_n)


@njit(cache=True)
def _efd_harmonics(xs, ys, ts, n_harmonics):  # pragma: no cover - jitted
    k = len(ts) - 1
    total = ts[k]
    a0 = 0.0
    c0 = 0.0
    sx = np.empty(k)
    sy = np.empty(k)
    cos_cur = np.empty(k + 1)
    sin_cur = np.empty(k + 1)
    cos_prev = np.empty(k + 1)
    sin_prev = np.empty(k + 1)
    base_cos = np.empty(k + 1)
    w1 = 2.0 * math.pi / total
    for p in range(k):
        dt = ts[p + 1] - ts[p]
        sx[p] = (xs[p + 1] - xs[p]) / dt
        sy[p] = (ys[p + 1] - ys[p]) / dt
        a0 += dt * (xs[p] + xs[p + 1]) * 0.5
        c0 += dt * (ys[p] + ys[p + 1]) * 0.5
    a0 /= total
    c0 /= total
    for p in range(k + 1):
        base_cos[p] = math.cos(w1 * ts[p])
        cos_cur[p] = base_cos[p]
        sin_cur[p] = math.sin(w1 * ts[p])
        cos_prev[p] = 1.0
        sin_prev[p] = 0.0
    out = np.empty((n_harmonics, 4))
    for n in range(1, n_harmonics + 1):
        scale = total / (2.0 * math.pi * math.pi * n * n)
        an = 0.0
        bn = 0.0
        cn = 0.0
        dn = 0.0
        for p in range(k):
            dcos = cos_cur[p + 1] - cos_cur[p]
            dsin = sin_cur[p + 1] - sin_cur[p]
            an += sx[p] * dcos
            bn += sx[p] * dsin
            cn += sy[p] * dcos
            dn += sy[p] * dsin
        out[n - 1, 0] = scale * an
        out[n - 1, 1] = scale * bn
        out[n - 1, 2] = scale * cn
        out[n - 1, 3] = scale * dn
        # advance cos/sin of n*w1*t by the Chebyshev-style recurrence
        for p in range(k + 1):
            c_next = 2.0 * base_cos[p] * cos_cur[p] - cos_prev[p]
            s_next = 2.0 * base_cos[p] * sin_cur[p] - sin_prev[p]
            cos_prev[p] = cos_cur[p]
            sin_prev[p] = sin_cur[p]
            cos_cur[p] = c_next
            sin_cur[p] = s_next
    return a0, c0, out


def elliptic_fourier(p: ContourParam, n_harmonics: int = DEFAULT_HARMONICS) -> FourierDescriptor:
    """Descriptor with ``n_harmonics`` harmonics of the contour parameterization."""
    if n_harmonics < 1:
        raise InvalidParameter(f"harmonic count must be >= 1, got {n_harmonics}")
    a0, c0, harm = _efd_harmonics(
        np.ascontiguousarray(p.xs, dtype=np.float64),
        np.ascontiguousarray(p.ys, dtype=np.float64),
        np.ascontiguousarray(p.ts, dtype=np.float64),
        int(n_harmonics),
    )
    return FourierDescriptor(a0=float(a0), c0=float(c0), harmonics=harm)


def reconstruct(d: FourierDescriptor, samples: int) -> np.ndarray:
    """Evaluate the truncated series at uniform parameter values over one period."""
    if samples < 3:
        raise InvalidParameter(f"need at least 3 samples, got {samples}")
    u = np.arange(samples) / samples
    n = np.arange(1, len(d.harmonics) + 1)
    ang = 2.0 * np.pi * np.outer(u, n)
    cos = np.cos(ang)
    sin = np.sin(ang)
    x = d.a0 + cos @ d.harmonics[:, 0] + sin @ d.harmonics[:, 1]
    y = d.c0 + cos @ d.harmonics[:, 2] + sin @ d.harmonics[:, 3]
    return np.column_stack([x, y])


def fourier_feature(d: FourierDescriptor) -> np.ndarray:
    """Flattened harmonics [a1, b1, c1, d1, a2, ...]; DC terms excluded."""
    return d.harmonics.reshape(-1).copy()
