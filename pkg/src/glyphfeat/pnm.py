"""Minimal PGM/PBM codec.

Reads P2 (ASCII) and P5 (binary) grayscale images with maxval 255; comment
lines starting with ``#`` are tolerated anywhere in the header.  Writes P5
grayscale and P1/P4 bitmaps.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidInput


def _header_tokens(data: bytes):
    """Yield whitespace-separated header tokens, skipping # comments."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i : i + 1]
        if c in b" \t\r\n":
            i += 1
            continue
        if c == b"#":
            while i < n and data[i : i + 1] not in b"\r\n":
                i += 1
            continue
        j = i
        while j < n and data[j : j + 1] not in b" \t\r\n":
            j += 1
        yield data[i:j], j
        i = j


def read_pgm(path) -> np.ndarray:
    """Read a P2/P5 PGM file into a (height, width) uint8 array."""
    with open(path, "rb") as f:
        data = f.read()
    toks = _header_tokens(data)
    try:
        magic, _ = next(toks)
    except StopIteration:
        raise InvalidInput(f"{path}: empty file")
    if magic not in (b"P2", b"P5"):
        raise InvalidInput(f"{path}: not a P2/P5 PGM (magic {magic!r})")
    try:
        width, _ = next(toks)
        height, _ = next(toks)
        maxval, end = next(toks)
        width, height, maxval = int(width), int(height), int(maxval)
    except (StopIteration, ValueError):
        raise InvalidInput(f"{path}: truncated or malformed PGM header")
    if width < 1 or height < 1:
        raise InvalidInput(f"{path}: bad dimensions {width}x{height}")
    if maxval != 255:
        raise InvalidInput(f"{path}: unsupported maxval {maxval} (expected 255)")
    count = width * height
    if magic == b"P5":
        raster = data[end + 1 : end + 1 + count]
        if len(raster) < count:
            raise InvalidInput(f"{path}: raster truncated")
        img = np.frombuffer(raster, dtype=np.uint8, count=count)
    else:
        vals = data[end:].split()
        if len(vals) < count:
            raise InvalidInput(f"{path}: raster truncated")
        img = np.array([int(v) for v in vals[:count]], dtype=np.uint8)
    return img.reshape(height, width)


def write_pgm(path, img: np.ndarray) -> None:
    """Write a (height, width) array of 0..255 intensities as binary P5."""
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.size == 0:
        raise InvalidInput("image must be a non-empty 2-D array")
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (arr.shape[1], arr.shape[0]))
        f.write(arr.astype(np.uint8).tobytes())


def write_pbm(path, mask: np.ndarray, ascii_format: bool = False) -> None:
    """Write a boolean ink mask as PBM (P4 binary, or P1 when ascii_format)."""
    arr = np.asarray(mask).astype(bool)
    if arr.ndim != 2 or arr.size == 0:
        raise InvalidInput("mask must be a non-empty 2-D array")
    h, w = arr.shape
    with open(path, "wb") as f:
        if ascii_format:
            f.write(b"P1\n%d %d\n" % (w, h))
            for row in arr:
                f.write(" ".join("1" if v else "0" for v in row).encode() + b"\n")
        else:
            f.write(b"P4\n%d %d\n" % (w, h))
            f.write(np.packbits(arr, axis=1).tobytes())


def read_pbm(path) -> np.ndarray:
    """Read a P1/P4 PBM file into a boolean ink mask."""
    with open(path, "rb") as f:
        data = f.read()
    toks = _header_tokens(data)
    magic, _ = next(toks)
    if magic not in (b"P1", b"P4"):
        raise InvalidInput(f"{path}: not a P1/P4 PBM (magic {magic!r})")
    width, _ = next(toks)
    height, end = next(toks)
    width, height = int(width), int(height)
    if magic == b"P4":
        row_bytes = (width + 7) // 8
        raster = data[end + 1 : end + 1 + row_bytes * height]
        bits = np.unpackbits(np.frombuffer(raster, dtype=np.uint8).reshape(height, row_bytes), axis=1)
        return bits[:, :width].astype(bool)
    vals = [v for v in data[end:].split() if v in (b"0", b"1")]
    bits = np.array([int(v) for v in vals[: width * height]], dtype=np.uint8)
    return bits.reshape(height, width).astype(bool)
