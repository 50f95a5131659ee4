import math

import numpy as np
import pytest

from glyphfeat.errors import EmptyPage, InvalidParameter
from glyphfeat.hough import (
    PEAK_RHO_WINDOW,
    accumulate,
    detect_peaks,
    detect_text_lines,
    hough_char_feature,
    hough_rho,
    partition_subsets,
)
from glyphfeat.raster import PageMetrics, connected_components, page_metrics
from glyphfeat.synth import make_line_page


def test_rho_axis_values():
    assert hough_rho(3, 4, 0.0) == pytest.approx(3.0)
    assert hough_rho(3, 4, 90.0) == pytest.approx(4.0)
    assert hough_rho(1, 1, 45.0) == pytest.approx(math.sqrt(2))


def test_rho_antisymmetry_identity():
    rng = np.random.default_rng(20)
    for _ in range(200):
        x, y = rng.normal(0, 50, 2)
        t = rng.uniform(-360, 360)
        assert hough_rho(x, y, t) + hough_rho(-x, -y, t) == 0.0


def test_accumulate_empty_points():
    acc = accumulate([], 0, 179, 1.0, 1.0)
    assert acc.bins.sum() == 0


def test_accumulate_single_point_votes_once_per_theta():
    acc = accumulate([(5.0, 7.0)], 0, 179, 1.0, 2.0)
    assert acc.bins.shape[0] == 180
    assert (acc.bins.sum(axis=1) == 1).all()


def test_accumulate_vote_conservation():
    rng = np.random.default_rng(21)
    pts = rng.uniform(0, 40, (17, 2))
    acc = accumulate(pts, 30, 60, 1.5, 1.0)
    n_theta = acc.bins.shape[0]
    assert acc.bins.sum() == 17 * n_theta


def test_accumulate_collinear_peak():
    pts = [(x, 5.0) for x in range(20)]
    acc = accumulate(pts, 85, 95, 1.0, 0.5)
    ti, ri = np.unravel_index(acc.bins.argmax(), acc.bins.shape)
    assert acc.theta_values()[ti] == pytest.approx(90.0)
    assert acc.rho_values()[ri] == pytest.approx(5.0, abs=0.5)
    assert acc.bins[ti, ri] == 20


def test_accumulate_rejects_bad_config():
    with pytest.raises(InvalidParameter):
        accumulate([(0, 0)], 0, 180, 0.0, 1.0)
    with pytest.raises(InvalidParameter):
        accumulate([(0, 0)], 90, 10, 1.0, 1.0)


def test_accumulator_rotation_equivariance():
    rng = np.random.default_rng(22)
    base = rng.uniform(-1, 1, (40, 2)) * [30, 2]  # elongated cloud along x
    for phi in (20.0, 45.0, 75.0):
        acc0 = accumulate(base, 0, 179, 1.0, 1.0)
        r = math.radians(phi)
        rot = base @ np.array([[math.cos(r), math.sin(r)], [-math.sin(r), math.cos(r)]])
        acc1 = accumulate(rot, 0, 179, 1.0, 1.0)
        t0 = acc0.theta_values()[acc0.bins.max(axis=1).argmax()]
        t1 = acc1.theta_values()[acc1.bins.max(axis=1).argmax()]
        diff = (t1 - t0 - phi) % 180.0
        assert min(diff, 180.0 - diff) <= 1.0 + 1e-9


def test_detect_peaks_single_cluster():
    pts = [(float(x), 10.0 + 0.05 * x) for x in range(15)]
    acc = accumulate(pts, 85, 95, 1.0, 1.0)
    peaks = detect_peaks(acc, pts, min_votes=3)
    assert len(peaks) == 1
    peak, assigned = peaks[0]
    assert sorted(assigned) == list(range(15))
    assert peak.votes == 15


def test_detect_peaks_two_parallel_lines():
    rho_res = 1.0
    offset = 20 * rho_res  # beyond the +-5 bin window
    pts = [(float(x), 10.0) for x in range(12)] + [(float(x), 10.0 + offset) for x in range(12)]
    acc = accumulate(pts, 85, 95, 1.0, rho_res)
    peaks = detect_peaks(acc, pts, min_votes=3)
    assert len(peaks) == 2
    groups = [sorted(a) for _, a in peaks]
    assert sorted(groups) == [list(range(12)), list(range(12, 24))]


def test_detect_peaks_empty_accumulator():
    acc = accumulate([], 85, 95, 1.0, 1.0)
    assert detect_peaks(acc, [], min_votes=1) == []


def test_detect_peaks_assignments_disjoint_and_votes_bounded():
    rng = np.random.default_rng(23)
    pts = rng.uniform(0, 60, (40, 2))
    acc = accumulate(pts, 85, 95, 1.0, 2.0)
    peaks = detect_peaks(acc, pts, min_votes=2)
    seen = set()
    for peak, assigned in peaks:
        assert not (set(assigned) & seen)
        seen |= set(assigned)
    assert sum(p.votes for p, _ in peaks) <= len(pts)


def _comp_with(h, w):
    img = np.zeros((h + 4, w + 4), bool)
    img[2 : 2 + h, 2 : 2 + w] = True
    return connected_components(img)[0]


def test_partition_subsets_rules():
    m = PageMetrics(avg_height=10.0, avg_width=10.0)
    c1 = _comp_with(20, 20)  # H = 2 AH, W = 2 AW -> subset 1
    c2 = _comp_with(40, 8)   # H = 4 AH -> subset 2
    c3 = _comp_with(3, 5)    # small mark -> subset 3
    comps = []
    for i, c in enumerate((c1, c2, c3), start=1):
        comps.append(type(c)(id=i, bbox=c.bbox, area=c.area, gravity_center=c.gravity_center, seed=c.seed))
    part = partition_subsets(comps, m, image_width=500)
    assert part.subset1 == (1,)
    assert part.subset2 == (2,)
    assert part.subset3 == (3,)


def test_partition_total_and_disjoint():
    rng = np.random.default_rng(24)
    for _ in range(10):
        img = rng.random((50, 70)) < 0.25
        comps = connected_components(img)
        if not comps:
            continue
        part = partition_subsets(comps, page_metrics(comps), img.shape[1])
        all_ids = sorted(part.subset1 + part.subset2 + part.subset3)
        assert all_ids == [c.id for c in comps]


def _line_accuracy(n_lines, skew):
    page, centers, rows = make_line_page(n_lines, 10, skew_deg=skew)
    comps = connected_components(page)
    part = partition_subsets(comps, page_metrics(comps), page.shape[1])
    lines = detect_text_lines(page)
    comp_row = {}
    for c in comps:
        d = np.hypot(centers[:, 0] - c.gravity_center[0], centers[:, 1] - c.gravity_center[1])
        comp_row[c.id] = int(rows[int(np.argmin(d))])
    correct = total = 0
    for ln in lines:
        for cid in ln.members:
            if cid in part.subset1:
                total += 1
                correct += comp_row[cid] == ln.line_id - 1
    return len(lines), correct / total if total else 0.0, lines


def test_three_line_page():
    n, acc, lines = _line_accuracy(3, 0.0)
    assert n == 3
    assert acc == 1.0
    assert all(len(ln.members) == 10 for ln in lines)


def test_three_line_page_skewed_theta():
    n, acc, lines = _line_accuracy(3, 3.0)
    assert n == 3
    assert acc >= 0.95
    for ln in lines:
        assert abs(ln.theta_deg - 87.0) <= 1.0


def test_five_line_page():
    for skew in (0.0, 3.0):
        n, acc, _ = _line_accuracy(5, skew)
        assert n == 5
        assert acc >= 0.95


def test_single_blob_page_fallback():
    img = np.zeros((40, 40), bool)
    img[15:25, 10:30] = True
    lines = detect_text_lines(img)
    assert len(lines) == 1
    assert lines[0].members == (1,)


def test_empty_page_raises():
    with pytest.raises(EmptyPage):
        detect_text_lines(np.zeros((20, 20), bool))


def test_tall_component_joins_multiple_lines():
    page, centers, rows = make_line_page(2, 8, skew_deg=0.0, pitch=60)
    # a vertical bar spanning both lines
    ys = [int(centers[rows == 0][:, 1].mean()), int(centers[rows == 1][:, 1].mean())]
    page[ys[0] - 10 : ys[1] + 10, 4:10] = True
    lines = detect_text_lines(page)
    assert len(lines) == 2
    comps = connected_components(page)
    part = partition_subsets(comps, page_metrics(comps), page.shape[1])
    assert len(part.subset2) == 1
    tall = part.subset2[0]
    assert all(tall in ln.members for ln in lines)


def test_every_component_on_some_line():
    page, _, _ = make_line_page(3, 6, skew_deg=0.0)
    page[5, 5] = True  # a stray dot -> subset 3
    comps = connected_components(page)
    lines = detect_text_lines(page)
    covered = set()
    for ln in lines:
        covered |= set(ln.members)
    assert covered == {c.id for c in comps}


def _bar_image(n=48, horizontal=False):
    img = np.zeros((n, n), bool)
    if horizontal:
        img[22:27, 10:38] = True
    else:
        img[10:38, 22:27] = True
    return img


def test_char_feature_translation_exact():
    img = np.zeros((80, 80), bool)
    img[10:38, 22:27] = True
    img[20:24, 27:40] = True
    c1 = connected_components(img)[0]
    f1 = hough_char_feature(img, c1, 36, 16)
    moved = np.zeros((80, 80), bool)
    ys, xs = np.nonzero(img)
    moved[ys - 9, xs + 17]= True
    c2 = connected_components(moved)[0]
    f2 = hough_char_feature(moved, c2, 36, 16)
    assert np.array_equal(f1, f2)


def test_char_feature_bar_rotation_alignment():
    img = _bar_image()
    rot = np.rot90(img)
    f1 = hough_char_feature(img, connected_components(img)[0], 36, 16)
    f2 = hough_char_feature(rot, connected_components(rot)[0], 36, 16)
    assert np.linalg.norm(f1 - f2) < 2.0 / 36


def test_char_feature_disk_theta_profile_uniform():
    n = 69
    yy, xx = np.mgrid[0:n, 0:n]
    disk = (xx - n // 2) ** 2 + (yy - n // 2) ** 2 <= 30**2
    f = hough_char_feature(disk, connected_components(disk)[0], 36, 8)
    prof = f[:36]
    assert np.abs(prof - prof.mean()).max() / prof.mean() <= 0.10


def test_char_feature_normalization_and_shift():
    img = _bar_image()
    f = hough_char_feature(img, connected_components(img)[0], 36, 16)
    assert f.shape == (52,)
    assert f[:36].sum() == pytest.approx(1.0)
    assert f[36:].sum() == pytest.approx(1.0)
    assert f[0] == f[:36].max()  # max-first circular shift


def test_char_feature_sampled_is_translation_exact():
    img = np.zeros((90, 90), bool)
    img[10:50, 30:36] = True
    img[46:50, 30:60] = True
    c1 = connected_components(img)[0]
    f1 = hough_char_feature(img, c1, 90, 24, sample_points=64)
    moved = np.zeros((90, 90), bool)
    ys, xs = np.nonzero(img)
    moved[ys + 13, xs - 11] = True
    c2 = connected_components(moved)[0]
    f2 = hough_char_feature(moved, c2, 90, 24, sample_points=64)
    assert np.array_equal(f1, f2)


def test_peak_window_constant_is_five_bins():
    # the assignment window is +-5 rho bins at the peak theta
    assert PEAK_RHO_WINDOW == 5
