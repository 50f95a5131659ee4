import math

import numpy as np
import pytest

from glyphfeat.errors import GlyphTooLarge, InvalidParameter
from glyphfeat.gabor import GaborParams, convolve, gabor_feature, gabor_kernel


def test_center_tap_is_one_for_every_theta():
    p = GaborParams(m=8, lam=1.0, sigma_x=2.0, sigma_y=1.0)  # paper parameter set
    for theta in p.orientations():
        k = gabor_kernel(theta, p)
        assert k.taps[p.radius, p.radius] == 1.0


def test_theta_zero_closed_form():
    p = GaborParams(lam=4.0, sigma_x=2.0, sigma_y=1.0, kernel_radius=5)
    k = gabor_kernel(0.0, p)
    r = p.radius
    for y in range(-r, r + 1):
        for x in range(-r, r + 1):
            want = math.exp(-0.5 * (x**2 / 4.0 + y**2 / 1.0)) * math.cos(2 * math.pi * x / 4.0)
            assert k.taps[y + r, x + r] == pytest.approx(want, abs=1e-12)


def test_quarter_turn_kernel_is_transpose_map():
    p = GaborParams()
    k0 = gabor_kernel(0.0, p)
    k90 = gabor_kernel(math.pi / 2, p)
    r = p.radius
    for y in range(-r, r + 1):
        for x in range(-r, r + 1):
            assert k90.taps[y + r, x + r] == pytest.approx(k0.taps[-x + r, y + r], abs=1e-12)


def test_orientation_grid_matches_formula():
    p = GaborParams(m=6)
    assert p.orientations() == pytest.approx([2 * math.pi * k / 6 for k in range(6)])


def test_params_validation():
    with pytest.raises(InvalidParameter):
        GaborParams(m=0)
    with pytest.raises(InvalidParameter):
        GaborParams(lam=0.0)
    with pytest.raises(InvalidParameter):
        GaborParams(sigma_x=-1.0)


def test_convolve_zero_image():
    p = GaborParams()
    k = gabor_kernel(0.3, p)
    assert np.abs(convolve(np.zeros((16, 16)), k)).max() == 0.0


def test_convolve_impulse_gives_flipped_taps():
    p = GaborParams(kernel_radius=3)
    k = gabor_kernel(0.7, p)
    img = np.zeros((9, 9))
    img[4, 4] = 1.0
    resp = convolve(img, k)
    want = k.taps[::-1, ::-1]
    assert np.abs(resp[1:8, 1:8] - want).max() < 1e-12


def test_convolve_uniform_interior():
    p = GaborParams(kernel_radius=4)
    k = gabor_kernel(1.1, p)
    v = 2.5
    resp = convolve(np.full((20, 20), v), k)
    interior = resp[4:16, 4:16]
    assert np.abs(interior - v * k.taps.sum()).max() < 1e-9


def test_convolve_linearity():
    rng = np.random.default_rng(40)
    p = GaborParams()
    k = gabor_kernel(0.5, p)
    x = rng.random((24, 24))
    y = rng.random((24, 24))
    a, b = 1.7, -0.4
    lhs = convolve(a * x + b * y, k)
    rhs = a * convolve(x, k) + b * convolve(y, k)
    assert np.abs(lhs - rhs).max() < 1e-9


def test_separable_path_matches_dense():
    p = GaborParams()
    rng = np.random.default_rng(41)
    img = rng.random((32, 32))
    for theta in (0.0, math.pi / 2, math.pi, 3 * math.pi / 2):
        k = gabor_kernel(theta, p)
        assert k.row is not None
        dense = np.abs(convolve(img, gabor_kernel(theta + 1e-9, p)))  # forces dense path
        fast = np.abs(convolve(img, k))
        assert np.abs(dense - fast).max() < 1e-6


def test_feature_translation_exact():
    p = GaborParams()
    img = np.zeros((100, 100), bool)
    img[20:60, 30:36] = True
    img[56:60, 30:60] = True
    moved = np.zeros((100, 100), bool)
    ys, xs = np.nonzero(img)
    moved[ys + 17, xs - 9] = True
    f1 = gabor_feature(img, p, frame=96, grid=4)
    f2 = gabor_feature(moved, p, frame=96, grid=4)
    assert np.array_equal(f1, f2)


def test_feature_quarter_turn_block_permutation():
    # m = 4, single cell: rotating the raster by 90 deg cycles the blocks
    p = GaborParams()
    img = np.zeros((64, 64), bool)
    img[12:52, 28:34] = True
    f = gabor_feature(img, p, frame=64, grid=1, align=False)
    f_rot = gabor_feature(np.rot90(img), p, frame=64, grid=1, align=False)
    assert np.abs(np.roll(f, -1) - f_rot).max() / np.abs(f).max() < 0.05


def test_feature_aligned_invariant_to_quarter_turns():
    p = GaborParams()
    img = np.zeros((64, 64), bool)
    img[10:50, 20:24] = True
    img[46:50, 20:44] = True  # asymmetric L
    f0 = gabor_feature(img, p, frame=64, grid=4, align=True)
    for k in (1, 2, 3):
        fk = gabor_feature(np.rot90(img, k), p, frame=64, grid=4, align=True)
        assert np.linalg.norm(fk - f0) / np.linalg.norm(f0) < 1e-9


def test_feature_bar_vs_rotated_bar():
    p = GaborParams()
    img = np.zeros((64, 64), bool)
    img[12:52, 29:33] = True
    f1 = gabor_feature(img, p, frame=64, grid=4, align=True)
    f2 = gabor_feature(np.rot90(img), p, frame=64, grid=4, align=True)
    assert np.linalg.norm(f1 - f2) / np.linalg.norm(f1) < 0.1


def test_feature_m1_alignment_noop_and_length():
    p = GaborParams(m=1)
    img = np.zeros((40, 40), bool)
    img[10:30, 15:25] = True
    f1 = gabor_feature(img, p, frame=64, grid=3, align=True)
    f2 = gabor_feature(img, p, frame=64, grid=3, align=False)
    assert f1.shape == (9,)
    assert np.array_equal(f1, f2)


def test_feature_lengths():
    img = np.zeros((40, 40), bool)
    img[10:30, 15:25] = True
    f = gabor_feature(img, GaborParams(m=4), frame=64, grid=4)
    assert f.shape == (64,)
    assert (f >= 0).all()


def test_feature_rejects_tiny_frame():
    img = np.zeros((8, 8), bool)
    img[2:6, 2:6] = True
    with pytest.raises(GlyphTooLarge):
        gabor_feature(img, GaborParams(), frame=8, grid=2)


def test_paper_lambda_axis_aligned_carrier_is_constant():
    # lambda = 1: cos(2 pi x) = 1 on integer grids, kernel = Gaussian envelope
    p = GaborParams(lam=1.0)
    k = gabor_kernel(0.0, p)
    r = p.radius
    xs = np.arange(-r, r + 1, dtype=float)
    envelope = np.exp(-0.5 * (xs[None, :] / p.sigma_x) ** 2 - 0.5 * (xs[:, None] / p.sigma_y) ** 2)
    assert np.abs(k.taps - envelope).max() < 1e-12
