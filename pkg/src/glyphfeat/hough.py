"""Polar Hough voting, text-line detection and the per-glyph Hough feature.

The accumulator is filled by the classic per-point vote loop: every point
casts one vote per theta bin along rho = x*cos(theta) + y*sin(theta).  Text
lines follow the block pipeline: size-based component partition, voting with
subset-1 gravity centers over theta in [85, 95] degrees, iterative peak
assignment, and a crossing-distance merge of duplicate candidates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .contour import trace_contour
from .errors import EmptyPage, InvalidInput, InvalidParameter
from .raster import ConnectedComponent, PageMetrics, as_binary, connected_components, page_metrics

DEFAULT_THETA_BINS = 180
DEFAULT_RHO_BINS = 32
LINE_THETA_MIN = 85.0
LINE_THETA_MAX = 95.0
LINE_THETA_RES = 1.0
LINE_MIN_VOTES = 3
PEAK_RHO_WINDOW = 5  # +- rho bins assigned to a detected peak


def hough_rho(x: float, y: float, theta_deg: float) -> float:
    """rho = x*cos(theta) + y*sin(theta), theta in degrees."""
    t = math.radians(theta_deg)
    return x * math.cos(t) + y * math.sin(t)


@dataclass
class HoughAccumulator:
    theta_min: float
    theta_max: float
    theta_res: float
    rho_res: float
    rho_extent: float
    origin: tuple[float, float]
    bins: np.ndarray  # (n_theta, n_rho) vote counts

    def theta_values(self) -> np.ndarray:
        return self.theta_min + self.theta_res * np.arange(self.bins.shape[0])

    def rho_values(self) -> np.ndarray:
        return -self.rho_extent + self.rho_res * np.arange(self.bins.shape[1])

    def rho_index(self, rho) -> np.ndarray:
        idx = np.rint((np.asarray(rho) + self.rho_extent) / self.rho_res).astype(int)
        return np.clip(idx, 0, self.bins.shape[1] - 1)


@dataclass(frozen=True)
class HoughPeak:
    rho: float
    theta: float
    votes: int


@dataclass(frozen=True)
class TextLine:
    line_id: int
    rho: float
    theta_deg: float
    members: tuple[int, ...]


@dataclass(frozen=True)
class SubsetPartition:
    subset1: tuple[int, ...]
    subset2: tuple[int, ...]
    subset3: tuple[int, ...]


def accumulate(
    points,
    theta_min: float,
    theta_max: float,
    theta_res: float,
    rho_res: float,
    rho_extent: float | None = None,
    origin: tuple[float, float] = (0.0, 0.0),
) -> HoughAccumulator:
    """Fill an accumulator; each point votes once per theta bin."""
    if theta_res <= 0 or rho_res <= 0:
        raise InvalidParameter("theta_res and rho_res must be positive")
    if theta_max < theta_min:
        raise InvalidParameter("empty theta range")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n_theta = int(round((theta_max - theta_min) / theta_res)) + 1
    ox, oy = origin
    if len(pts):
        max_norm = float(np.hypot(pts[:, 0] - ox, pts[:, 1] - oy).max())
    else:
        max_norm = 0.0
    extent = max(rho_extent or 0.0, max_norm, rho_res)
    n_rho = int(math.ceil(2.0 * extent / rho_res)) + 1
    bins = np.zeros((n_theta, n_rho), dtype=np.int64)
    thetas = [math.radians(theta_min + i * theta_res) for i in range(n_theta)]
    cos = [math.cos(t) for t in thetas]
    sin = [math.sin(t) for t in thetas]
    inv_res = 1.0 / rho_res
    last = n_rho - 1
    for x, y in pts:
        xr = float(x) - ox
        yr = float(y) - oy
        for k in range(n_theta):
            j = int((xr * cos[k] + yr * sin[k] + extent) * inv_res + 0.5)
            if j < 0:
                j = 0
            elif j > last:
                j = last
            bins[k, j] += 1
    return HoughAccumulator(
        theta_min=theta_min,
        theta_max=theta_max,
        theta_res=theta_res,
        rho_res=rho_res,
        rho_extent=extent,
        origin=(float(ox), float(oy)),
        bins=bins,
    )


def detect_peaks(acc: HoughAccumulator, voters, min_votes: int = 1):
    """Iteratively take the maximum cell and claim nearby voters.

    Voters whose rho at the peak theta falls within +-PEAK_RHO_WINDOW bins
    of the peak are assigned to it and their votes removed everywhere.
    Repeats while the maximum cell holds at least ``min_votes``.  Returns a
    list of (HoughPeak, assigned voter index list); assignments are disjoint.
    """
    pts = np.asarray(voters, dtype=float).reshape(-1, 2)
    ox, oy = acc.origin
    thetas = np.radians(acc.theta_values())
    # rho bin of every voter at every theta
    rho = np.outer(pts[:, 0] - ox, np.cos(thetas)) + np.outer(pts[:, 1] - oy, np.sin(thetas))
    bin_idx = acc.rho_index(rho)  # (n_voters, n_theta)
    bins = acc.bins.copy()
    unassigned = np.ones(len(pts), dtype=bool)
    results = []
    theta_vals = acc.theta_values()
    rho_vals = acc.rho_values()
    while True:
        flat = int(bins.argmax())
        ti, ri = divmod(flat, bins.shape[1])
        votes = int(bins[ti, ri])
        if votes < min_votes:
            break
        near = unassigned & (np.abs(bin_idx[:, ti] - ri) <= PEAK_RHO_WINDOW)
        claimed = np.nonzero(near)[0]
        if len(claimed) == 0:
            break
        for v in claimed:
            bins[np.arange(bins.shape[0]), bin_idx[v]] -= 1
        unassigned[claimed] = False
        peak = HoughPeak(rho=float(rho_vals[ri]), theta=float(theta_vals[ti]), votes=votes)
        results.append((peak, claimed.tolist()))
    return results


def partition_subsets(
    comps: list[ConnectedComponent], m: PageMetrics, image_width: int
) -> SubsetPartition:
    """Size-based component partition.

    Subset 1 (text-line voters): 0.5*AH < height < 3*AH and
    1.5*AW < width < image width.  Subset 2: height >= 3*AH (may span
    several lines).  Subset 3: everything else (marks, elongations).
    """
    if m.avg_height <= 0:
        raise InvalidParameter("average height must be positive")
    s1, s2, s3 = [], [], []
    ah, aw = m.avg_height, m.avg_width
    for c in comps:
        if c.height >= 3.0 * ah:
            s2.append(c.id)
        elif 0.5 * ah < c.height < 3.0 * ah and 1.5 * aw < c.width < image_width:
            s1.append(c.id)
        else:
            s3.append(c.id)
    return SubsetPartition(subset1=tuple(s1), subset2=tuple(s2), subset3=tuple(s3))


def _crossing_y(rho: float, theta_deg: float, x_mid: float) -> float:
    t = math.radians(theta_deg)
    return (rho - x_mid * math.cos(t)) / math.sin(t)


def _line_y_at(rho: float, theta_deg: float, x: float) -> float:
    t = math.radians(theta_deg)
    return (rho - x * math.cos(t)) / math.sin(t)


def detect_text_lines(
    img,
    theta_min: float = LINE_THETA_MIN,
    theta_max: float = LINE_THETA_MAX,
    theta_res: float = LINE_THETA_RES,
    min_votes: int = LINE_MIN_VOTES,
    connectivity: int = 8,
) -> list[TextLine]:
    """Full text-line pipeline on a binary page image.

    Components -> page metrics -> subset partition -> subset-1 centroid
    voting (rho resolution 0.2*AH) -> iterative peaks -> merge of candidate
    lines whose crossings with the page's middle vertical are closer than
    half the average adjacent gap -> subset-2 components join every
    intersecting line, subset-3 and any leftover components join the
    nearest line.
    """
    mask = as_binary(img)
    comps = connected_components(mask, connectivity)
    if not comps:
        raise EmptyPage("page has no connected components")
    metrics = page_metrics(comps)
    height, width = mask.shape
    part = partition_subsets(comps, metrics, width)
    by_id = {c.id: c for c in comps}

    def fallback() -> list[TextLine]:
        ys = [by_id[c.id].gravity_center[1] for c in comps]
        return [TextLine(1, float(np.mean(ys)), 90.0, tuple(sorted(by_id)))]

    if not part.subset1:
        return fallback()
    voter_ids = list(part.subset1)
    centers = np.array([by_id[i].gravity_center for i in voter_ids])
    acc = accumulate(
        centers, theta_min, theta_max, theta_res, rho_res=0.2 * metrics.avg_height
    )
    peaks = detect_peaks(acc, centers, min_votes=min_votes)
    if not peaks:
        return fallback()

    x_mid = width / 2.0
    candidates = []  # (crossing_y, rho, theta, votes, member id set)
    for peak, vidx in peaks:
        members = {voter_ids[v] for v in vidx}
        candidates.append(
            (_crossing_y(peak.rho, peak.theta, x_mid), peak.rho, peak.theta, peak.votes, members)
        )
    candidates.sort(key=lambda c: c[0])

    # merge candidates that are duplicates of one physical line
    merged = [candidates[0]]
    if len(candidates) > 1:
        gaps = np.diff([c[0] for c in candidates])
        threshold = 0.5 * float(np.mean(gaps))
        for cand, gap in zip(candidates[1:], gaps):
            if gap < threshold:
                prev = merged[-1]
                keep = prev if prev[3] >= cand[3] else cand
                merged[-1] = (keep[0], keep[1], keep[2], prev[3] + cand[3], prev[4] | cand[4])
            else:
                merged.append(cand)

    lines = [
        {"rho": rho, "theta": theta, "members": set(members)}
        for _, rho, theta, _, members in merged
    ]

    def nearest_line(cx: float, cy: float) -> dict:
        dists = [abs(hough_rho(cx, cy, ln["theta"]) - ln["rho"]) for ln in lines]
        return lines[int(np.argmin(dists))]

    assigned = set().union(*(ln["members"] for ln in lines))
    for cid in part.subset1:
        if cid not in assigned:
            c = by_id[cid]
            nearest_line(*c.gravity_center)["members"].add(cid)

    for cid in part.subset2:
        c = by_id[cid]
        x0, y0, x1, y1 = c.bbox
        hits = 0
        for ln in lines:
            ya = _line_y_at(ln["rho"], ln["theta"], x0)
            yb = _line_y_at(ln["rho"], ln["theta"], x1)
            if min(ya, yb) <= y1 and max(ya, yb) >= y0:
                ln["members"].add(cid)
                hits += 1
        if hits == 0:
            nearest_line(*c.gravity_center)["members"].add(cid)

    for cid in part.subset3:
        c = by_id[cid]
        nearest_line(*c.gravity_center)["members"].add(cid)

    lines.sort(key=lambda ln: _crossing_y(ln["rho"], ln["theta"], x_mid))
    return [
        TextLine(i + 1, float(ln["rho"]), float(ln["theta"]), tuple(sorted(ln["members"])))
        for i, ln in enumerate(lines)
    ]


def hough_char_feature(
    img,
    comp: ConnectedComponent,
    b_theta: int = DEFAULT_THETA_BINS,
    b_rho: int = DEFAULT_RHO_BINS,
    sample_points: int | None = None,
    connectivity: int = 8,
) -> np.ndarray:
    """Rotation/translation-robust Hough profile of one glyph.

    Contour pixels re-centered at the component's gravity center vote over
    b_theta orientations in [0, 180); folded distances |rho| are binned over
    [0, r_max].  The feature concatenates (a) the per-orientation peak vote
    concentration, circularly shifted so its maximum leads, and (b) the
    |rho| histogram of all votes.  Both parts are L1-normalized.  When
    ``sample_points`` is set the contour is resampled to exactly that many
    voters, which keeps the vote cost independent of glyph size.
    """
    if b_theta < 1 or b_rho < 1:
        raise InvalidParameter("bin counts must be >= 1")
    if comp.area < 1:
        raise InvalidInput("component is empty")
    contour = trace_contour(img, comp, connectivity)
    pts = contour.points.astype(float)
    if sample_points is not None:
        if sample_points < 1:
            raise InvalidParameter("sample_points must be >= 1")
        idx = (np.arange(sample_points) * len(pts)) // sample_points
        pts = pts[idx]
    cx, cy = comp.gravity_center
    xs = [float(v) for v in pts[:, 0] - cx]
    ys = [float(v) for v in pts[:, 1] - cy]
    r_max = max((math.hypot(x, y) for x, y in zip(xs, ys)), default=0.0)
    if r_max <= 0.0:
        r_max = 1.0
    step = math.pi / b_theta
    cos = [math.cos(step * k) for k in range(b_theta)]
    sin = [math.sin(step * k) for k in range(b_theta)]
    acc = np.zeros((b_theta, b_rho), dtype=np.int64)
    scale = b_rho / r_max
    last = b_rho - 1
    for x, y in zip(xs, ys):
        for k in range(b_theta):
            r = x * cos[k] + y * sin[k]
            if r < 0.0:
                r = -r
            j = int(r * scale)
            if j > last:
                j = last
            acc[k, j] += 1
    theta_profile = acc.max(axis=1).astype(float)
    rho_hist = acc.sum(axis=0).astype(float)
    if theta_profile.sum() > 0:
        theta_profile /= theta_profile.sum()
    if rho_hist.sum() > 0:
        rho_hist /= rho_hist.sum()
    shift = int(np.argmax(theta_profile))
    theta_profile = np.roll(theta_profile, -shift)
    return np.concatenate([theta_profile, rho_hist])
