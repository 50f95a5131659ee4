import numpy as np
import pytest

from glyphfeat.errors import InvalidInput
from glyphfeat.pnm import read_pbm, read_pgm, write_pbm, write_pgm


def test_p5_roundtrip(tmp_path):
    rng = np.random.default_rng(1)
    img = rng.integers(0, 256, (17, 23)).astype(np.uint8)
    path = tmp_path / "a.pgm"
    write_pgm(path, img)
    back = read_pgm(path)
    assert back.dtype == np.uint8
    assert np.array_equal(back, img)


def test_p2_ascii_with_comments(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P2\n# a comment\n3 2\n# another\n255\n0 10 20\n30 40 255\n")
    img = read_pgm(path)
    assert img.shape == (2, 3)
    assert img.tolist() == [[0, 10, 20], [30, 40, 255]]


def test_p5_with_header_comment(tmp_path):
    path = tmp_path / "b.pgm"
    path.write_bytes(b"P5\n#made by hand\n2 2\n255\n" + bytes([1, 2, 3, 4]))
    img = read_pgm(path)
    assert img.tolist() == [[1, 2], [3, 4]]


def test_rejects_wrong_maxval(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5\n2 2\n65535\n" + bytes(8))
    with pytest.raises(InvalidInput):
        read_pgm(path)


def test_rejects_bad_magic(tmp_path):
    path = tmp_path / "d.pgm"
    path.write_bytes(b"P6\n2 2\n255\n" + bytes(12))
    with pytest.raises(InvalidInput):
        read_pgm(path)


def test_truncated_raster(tmp_path):
    path = tmp_path / "e.pgm"
    path.write_bytes(b"P5\n4 4\n255\n" + bytes(5))
    with pytest.raises(InvalidInput):
        read_pgm(path)


@pytest.mark.parametrize("ascii_format", [False, True])
def test_pbm_roundtrip(tmp_path, ascii_format):
    rng = np.random.default_rng(2)
    mask = rng.random((11, 19)) < 0.4
    path = tmp_path / "m.pbm"
    write_pbm(path, mask, ascii_format=ascii_format)
    magic = path.read_bytes()[:2]
    assert magic == (b"P1" if ascii_format else b"P4")
    assert np.array_equal(read_pbm(path), mask)
