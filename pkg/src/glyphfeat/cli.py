"""Command line interface.

Subcommands: synth, extract, classify, bench, lines, binarize.
Exit codes: 0 success, 2 configuration or manifest error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import bench as bench_mod
from .classify import FeatureBase, classify as classify_one
from .contour import to_chain_code, trace_contour
from .dataset import load_dataset, write_dataset
from .errors import GlyphfeatError
from .features_io import read_features, write_features
from .hough import detect_text_lines
from .pnm import read_pgm, write_pbm
from .raster import binarize, connected_components
from .synth import make_benchmark_dataset


def _cmd_synth(args) -> int:
    items = make_benchmark_dataset(
        seed=args.seed,
        n_classes=args.classes,
        train_per_class=args.train,
        fresh_test_per_class=args.test,
        canvas=args.canvas,
        jitter=args.jitter,
    )
    manifest = write_dataset(items, args.out)
    print(f"wrote {len(items)} manifest rows to {manifest}")
    return 0


def _extract_config(args) -> bench_mod.ExperimentConfig:
    return bench_mod.ExperimentConfig(
        fourier_harmonics=args.harmonics,
        hough_theta_bins=args.b_theta,
        hough_rho_bins=args.b_rho,
        hough_sample_points=args.sample_points,
        wavelet_family=args.family,
        wavelet_levels=args.levels,
        wavelet_canvas=args.canvas,
        wavelet_centered=not args.no_center,
        gabor_m=args.m,
        gabor_lambda=bench_mod.ExperimentConfig().gabor_lambda if args.paper_lambda else args.lam,
        gabor_sigma_x=args.sigma_x,
        gabor_sigma_y=args.sigma_y,
        gabor_frame=args.frame,
        gabor_grid=args.grid,
        gabor_align=not args.no_align,
    )


def _cmd_extract(args) -> int:
    cfg = _extract_config(args)
    if args.paper_lambda:
        # lambda = 1 px/cycle sits at the sampling limit: along axis-aligned
        # orientations the cosine carrier is constant on integer grids and the
        # kernel degenerates to its Gaussian envelope.  Kept for fidelity.
        cfg = bench_mod.ExperimentConfig(**{**cfg.__dict__, "gabor_lambda": 1.0})
    items = load_dataset(args.manifest)
    if args.split != "all":
        items = [it for it in items if it.split == args.split]
    if not items:
        raise GlyphfeatError(f"no items selected from {args.manifest}")
    extract = bench_mod.make_extractor(args.technique, cfg)
    feats = []
    for it in items:
        feats.append(
            bench_mod.LabeledFeature(label=it.label, vector=extract(it.image), source_id=it.source_id)
        )
        if args.dump_chain:
            comp = bench_mod._largest_component(it.image)
            cc = to_chain_code(trace_contour(it.image, comp))
            print(",".join(str(c) for c in cc.codes))
    write_features(feats, args.out)
    print(f"wrote {len(feats)} feature rows ({len(feats[0].vector)} dims) to {args.out}")
    return 0


def _cmd_classify(args) -> int:
    base = FeatureBase(read_features(args.base))
    queries = read_features(args.queries)
    correct = 0
    with open(args.out, "w", newline="") as f:
        f.write("source_id,label,predicted,distance\n")
        for q in queries:
            pred = classify_one(q.vector, base)
            if pred.label == q.label:
                correct += 1
            f.write(f"{q.source_id},{q.label},{pred.label},{pred.distance:.9g}\n")
    print(f"rate={correct / len(queries):.6f} over {len(queries)} queries")
    return 0


def _cmd_bench(args) -> int:
    cfg = bench_mod.parse_config(args.config) if args.config else bench_mod.ExperimentConfig()
    rows, _evals, dataset = bench_mod.run_default_benchmark(cfg)
    bench_mod.emit_results(rows, args.out)
    feat_dir = args.features_dir or os.path.dirname(os.path.abspath(args.out))
    train = [it for it in dataset if it.split == "train"]
    for technique in cfg.techniques:
        extract = bench_mod.make_extractor(technique, cfg)
        feats = [
            bench_mod.LabeledFeature(label=it.label, vector=extract(it.image), source_id=it.source_id)
            for it in train
        ]
        write_features(feats, os.path.join(feat_dir, f"features_{technique}.csv"))
    print(f"wrote {len(rows)} result rows to {args.out}")
    return 0


def _cmd_lines(args) -> int:
    gray = read_pgm(args.page)
    mask = binarize(gray, method=args.method, window=args.window, k=args.k)
    if args.save_binarized:
        write_pbm(args.save_binarized, mask, ascii_format=args.ascii)
    lines = detect_text_lines(mask)
    with open(args.out, "w", newline="") as f:
        f.write("line_id,rho,theta_deg,member_component_ids\n")
        for ln in lines:
            members = ";".join(str(m) for m in ln.members)
            f.write(f"{ln.line_id},{ln.rho:#.6g},{ln.theta_deg:#.6g},{members}\n")
    print(f"detected {len(lines)} lines over {len(connected_components(mask))} components")
    return 0


def _cmd_binarize(args) -> int:
    gray = read_pgm(args.page)
    mask = binarize(gray, method=args.method, window=args.window, k=args.k)
    write_pbm(args.out, mask, ascii_format=args.ascii)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="glyphfeat", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="generate a synthetic glyph dataset")
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--classes", type=int, default=10)
    s.add_argument("--train", type=int, default=70, help="train samples per class")
    s.add_argument("--test", type=int, default=98, help="fresh test samples per class")
    s.add_argument("--canvas", type=int, default=128)
    s.add_argument("--jitter", type=float, default=1.5)
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(func=_cmd_synth)

    e = sub.add_parser("extract", help="extract feature vectors for a manifest")
    e.add_argument("--technique", required=True, choices=bench_mod.TECHNIQUES)
    e.add_argument("--in", dest="manifest", required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--split", choices=["all", "train", "test"], default="all")
    e.add_argument("--dump-chain", action="store_true",
                   help="print each glyph's Freeman codes as a comma-separated line")
    e.add_argument("--harmonics", type=int, default=20)
    e.add_argument("--b-theta", type=int, default=180)
    e.add_argument("--b-rho", type=int, default=32)
    e.add_argument("--sample-points", type=int, default=bench_mod.DEFAULT_SAMPLE_POINTS)
    e.add_argument("--family", default="db3")
    e.add_argument("--levels", type=int, default=3)
    e.add_argument("--canvas", type=int, default=512, help="wavelet canvas size")
    e.add_argument("--no-center", action="store_true",
                   help="wavelet: keep page placement instead of centering")
    e.add_argument("--m", type=int, default=4)
    e.add_argument("--lambda", dest="lam", type=float, default=4.0)
    e.add_argument("--paper-lambda", action="store_true",
                   help="force lambda=1 (aliases on the integer grid; see docs)")
    e.add_argument("--sigma-x", type=float, default=2.0)
    e.add_argument("--sigma-y", type=float, default=1.0)
    e.add_argument("--frame", type=int, default=128)
    e.add_argument("--grid", type=int, default=4)
    e.add_argument("--no-align", action="store_true")
    e.set_defaults(func=_cmd_extract)

    c = sub.add_parser("classify", help="nearest-neighbor classification of feature files")
    c.add_argument("--base", required=True)
    c.add_argument("--queries", required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=_cmd_classify)

    b = sub.add_parser("bench", help="run the comparative benchmark")
    b.add_argument("--config", help="key=value config file (defaults when omitted)")
    b.add_argument("--out", required=True, help="results CSV path")
    b.add_argument("--features-dir", help="directory for per-technique base feature CSVs")
    b.set_defaults(func=_cmd_bench)

    l = sub.add_parser("lines", help="detect text lines in a PGM page")
    l.add_argument("--in", dest="page", required=True)
    l.add_argument("--out", required=True)
    l.add_argument("--method", choices=["sauvola", "otsu"], default="sauvola")
    l.add_argument("--window", type=int, default=31)
    l.add_argument("--k", type=float, default=0.2)
    l.add_argument("--save-binarized", help="also write the binarized page as PBM")
    l.add_argument("--ascii", action="store_true", help="write PBM as P1 instead of P4")
    l.set_defaults(func=_cmd_lines)

    z = sub.add_parser("binarize", help="binarize a PGM page to PBM")
    z.add_argument("--in", dest="page", required=True)
    z.add_argument("--out", required=True)
    z.add_argument("--method", choices=["sauvola", "otsu"], default="sauvola")
    z.add_argument("--window", type=int, default=31)
    z.add_argument("--k", type=float, default=0.2)
    z.add_argument("--ascii", action="store_true")
    z.set_defaults(func=_cmd_binarize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GlyphfeatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
