"""Comparative benchmark: recognition rate and runtime per technique and transform.

The runner builds one feature base per technique from the train split at
identity, then sweeps geometric transforms over the test split, recording
recognition rate, mean extraction time and mean classification time per
(technique, transform) row.  With ``repetitions = 0`` timing is disabled and
all reported times are zero, which makes the emitted CSVs byte-reproducible
for a fixed seed and configuration.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from .classify import Evaluation, FeatureBase, LabeledFeature, evaluate
from .contour import parameterize, to_chain_code, trace_contour
from .errors import ConfigError
from .fourier import DEFAULT_HARMONICS, elliptic_fourier, fourier_feature
from .gabor import GaborParams, gabor_feature
from .hough import DEFAULT_RHO_BINS, DEFAULT_THETA_BINS, hough_char_feature
from .raster import connected_components
from .synth import DEFAULT_CANVAS, DEFAULT_JITTER, DatasetItem, make_benchmark_dataset
from .transforms import TransformSpec, apply_transform
from .wavelet import WaveletSpec, wavelet_feature

TECHNIQUES = ("hough", "fourier", "wavelet", "gabor")
DEFAULT_SAMPLE_POINTS = 384


@dataclass(frozen=True)
class ExperimentConfig:
    techniques: tuple[str, ...] = TECHNIQUES
    rotations: tuple[float, ...] = (30.0, 90.0)
    translations: tuple[tuple[int, int], ...] = ((16, 16),)
    scales: tuple[float, ...] = (0.5, 1.5)
    seed: int = 7
    repetitions: int = 1
    classes: int = 10
    train_per_class: int = 70
    test_per_class: int = 98  # fresh test samples per class
    canvas: int = DEFAULT_CANVAS
    jitter: float = DEFAULT_JITTER
    fourier_harmonics: int = DEFAULT_HARMONICS
    hough_theta_bins: int = DEFAULT_THETA_BINS
    hough_rho_bins: int = DEFAULT_RHO_BINS
    hough_sample_points: int = DEFAULT_SAMPLE_POINTS
    # canvas matches the glyph frame so the 4x4 block grid sits at glyph
    # scale; with the default 512 the whole frame lands in one block and
    # translation sensitivity would not show
    wavelet_family: str = "db3"
    wavelet_levels: int = 3
    wavelet_canvas: int = DEFAULT_CANVAS
    wavelet_centered: bool = False
    gabor_m: int = 4
    gabor_lambda: float = 4.0
    gabor_sigma_x: float = 2.0
    gabor_sigma_y: float = 1.0
    gabor_frame: int = 128
    gabor_grid: int = 4
    gabor_align: bool = True

    def sweep(self) -> list[TransformSpec]:
        specs = [TransformSpec()]
        specs += [TransformSpec(rotation_deg=r) for r in self.rotations]
        specs += [TransformSpec(dx=dx, dy=dy) for dx, dy in self.translations]
        specs += [TransformSpec(scale=s) for s in self.scales]
        return specs


@dataclass(frozen=True)
class ResultRow:
    technique: str
    transform: str
    recognition_rate: float
    mean_extract_time: float  # seconds per glyph
    mean_classify_time: float  # seconds per query
    n_queries: int


def _largest_component(img):
    comps = connected_components(img)
    if not comps:
        raise ConfigError("image with no ink reached an extractor")
    return max(comps, key=lambda c: c.area)


def make_extractor(technique: str, cfg: ExperimentConfig):
    """Callable mapping a binary glyph image to its feature vector."""
    if technique == "fourier":
        def extract(img):
            comp = _largest_component(img)
            param = parameterize(to_chain_code(trace_contour(img, comp)))
            return fourier_feature(elliptic_fourier(param, cfg.fourier_harmonics))
    elif technique == "hough":
        def extract(img):
            comp = _largest_component(img)
            return hough_char_feature(
                img, comp, cfg.hough_theta_bins, cfg.hough_rho_bins,
                sample_points=cfg.hough_sample_points,
            )
    elif technique == "wavelet":
        spec = WaveletSpec(family=cfg.wavelet_family, levels=cfg.wavelet_levels)
        def extract(img):
            return wavelet_feature(img, spec, canvas=cfg.wavelet_canvas, center=cfg.wavelet_centered)
    elif technique == "gabor":
        params = GaborParams(m=cfg.gabor_m, lam=cfg.gabor_lambda,
                             sigma_x=cfg.gabor_sigma_x, sigma_y=cfg.gabor_sigma_y)
        def extract(img):
            return gabor_feature(img, params, frame=cfg.gabor_frame,
                                 grid=cfg.gabor_grid, align=cfg.gabor_align)
    else:
        raise ConfigError(f"unknown technique {technique!r}")
    return extract


def _extract_all(items, extract, clock, repetitions):
    """Features for every item plus the median-over-repetitions mean time."""
    features = [
        LabeledFeature(label=it.label, vector=extract(it.image), source_id=it.source_id)
        for it in items
    ]
    if repetitions < 1:
        return features, 0.0
    times = []
    for _ in range(repetitions):
        t0 = clock()
        for it in items:
            extract(it.image)
        times.append((clock() - t0) / len(items))
    return features, float(np.median(times))


def run_experiment(cfg: ExperimentConfig, dataset: list[DatasetItem], clock=time.perf_counter):
    """Run the full sweep; returns (rows, evaluations keyed by (technique, transform))."""
    train = [it for it in dataset if it.split == "train"]
    test = [it for it in dataset if it.split == "test"]
    if not train or not test:
        raise ConfigError("dataset needs both train and test splits")
    for t in cfg.techniques:
        if t not in TECHNIQUES:
            raise ConfigError(f"unknown technique {t!r}")
    rows: list[ResultRow] = []
    evals: dict[tuple[str, str], Evaluation] = {}
    sweep = cfg.sweep()
    for technique in cfg.techniques:
        extract = make_extractor(technique, cfg)
        base_feats, _ = _extract_all(train, extract, clock, repetitions=0)
        base = FeatureBase(base_feats)
        for spec in sweep:
            transformed = [
                DatasetItem(image=apply_transform(it.image, spec), label=it.label,
                            split=it.split, source_id=it.source_id)
                for it in test
            ]
            queries, extract_time = _extract_all(transformed, extract, clock, cfg.repetitions)
            if len(queries[0].vector) != base.dim:
                raise ConfigError(
                    f"{technique}: query dim {len(queries[0].vector)} != base dim {base.dim}"
                )
            result = evaluate(queries, base, clock=clock)
            classify_time = result.mean_time if cfg.repetitions >= 1 else 0.0
            if cfg.repetitions > 1:
                times = [result.mean_time]
                for _ in range(cfg.repetitions - 1):
                    times.append(evaluate(queries, base, clock=clock).mean_time)
                classify_time = float(np.median(times))
            rows.append(
                ResultRow(
                    technique=technique,
                    transform=spec.describe(),
                    recognition_rate=result.recognition_rate,
                    mean_extract_time=extract_time,
                    mean_classify_time=classify_time,
                    n_queries=len(queries),
                )
            )
            evals[(technique, spec.describe())] = result
    return rows, evals


def run_default_benchmark(cfg: ExperimentConfig, clock=time.perf_counter):
    """Synthesize the seeded dataset and run the configured experiment."""
    dataset = make_benchmark_dataset(
        cfg.seed,
        n_classes=cfg.classes,
        train_per_class=cfg.train_per_class,
        fresh_test_per_class=cfg.test_per_class,
        canvas=cfg.canvas,
        jitter=cfg.jitter,
    )
    rows, evals = run_experiment(cfg, dataset, clock=clock)
    return rows, evals, dataset


def _fmt(v: float) -> str:
    return f"{v:#.6g}"


def emit_results(rows: list[ResultRow], out_path) -> None:
    """Plot-ready CSV: technique,transform,rate,extract_ms,classify_ms,n."""
    if not rows:
        raise ConfigError("no result rows to emit")
    with open(out_path, "w", newline="") as f:
        f.write("technique,transform,rate,extract_ms,classify_ms,n\n")
        for r in rows:
            f.write(
                f"{r.technique},{r.transform},{_fmt(r.recognition_rate)},"
                f"{_fmt(r.mean_extract_time * 1e3)},{_fmt(r.mean_classify_time * 1e3)},{r.n_queries}\n"
            )


def _parse_bool(v: str) -> bool:
    if v.lower() in ("1", "true", "yes", "on"):
        return True
    if v.lower() in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {v!r}")


def _parse_translations(v: str):
    out = []
    for part in v.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            dx, dy = part.split(":")
            out.append((int(dx), int(dy)))
        except ValueError:
            raise ConfigError(f"bad translation {part!r}, expected dx:dy")
    return tuple(out)


_PARSERS = {
    "techniques": lambda v: tuple(s.strip() for s in v.split(",") if s.strip()),
    "rotations": lambda v: tuple(float(s) for s in v.split(",") if s.strip()),
    "translations": _parse_translations,
    "scales": lambda v: tuple(float(s) for s in v.split(",") if s.strip()),
    "seed": int,
    "repetitions": int,
    "classes": int,
    "train_per_class": int,
    "test_per_class": int,
    "canvas": int,
    "jitter": float,
    "fourier_harmonics": int,
    "hough_theta_bins": int,
    "hough_rho_bins": int,
    "hough_sample_points": int,
    "wavelet_family": str,
    "wavelet_levels": int,
    "wavelet_canvas": int,
    "wavelet_centered": _parse_bool,
    "gabor_m": int,
    "gabor_lambda": float,
    "gabor_sigma_x": float,
    "gabor_sigma_y": float,
    "gabor_frame": int,
    "gabor_grid": int,
    "gabor_align": _parse_bool,
}


def parse_config(path) -> ExperimentConfig:
    """Flat key=value file; # starts a comment, every config field is addressable."""
    cfg = ExperimentConfig()
    overrides = {}
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in _PARSERS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                overrides[key] = _PARSERS[key](value)
            except ConfigError:
                raise
            except ValueError as e:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {e}")
    return replace(cfg, **overrides)
