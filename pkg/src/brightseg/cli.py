"""Command-line entry points.

Subcommands: segment (one image), batch (a directory), calibrate
(homogeneity lower bound from background samples), eval (score masks
against ground truth), kappa (rater agreement), serve (HTTP session
service for the calibration UI). All heavy lifting lives in the core
modules; the CLI only parses arguments and moves files.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import yaml

from . import denoise, image_io, metrics, spatial_stats
from .errors import BrightsegError, InsufficientSamples, InvalidParams
from .fuzzy import FuzzyParams, apply_sliders
from .segmentation import SegmentationConfig, segment
from .spatial_stats import SpatialThresholds

RASTER_SUFFIXES = {".png", ".tif", ".tiff", ".bmp"}
DEFAULT_PORT_ENV = "BRIGHTSEG_PORT"


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("segmentation parameters")
    g.add_argument("--profile", default="profile1",
                   help="builtin profile name, profile YAML path, or 'none' "
                        "(default: profile1)")
    g.add_argument("--config", type=Path, default=None,
                   help="YAML run-config file; flags override its values")
    g.add_argument("--lb", type=float, default=None,
                   help="homogeneity lower bound (overrides profile)")
    g.add_argument("--nav", type=float, default=None,
                   help="NAV threshold, 0..10")
    g.add_argument("--randomness", type=float, default=None,
                   help="Moran's I randomness threshold, -1..1")
    g.add_argument("--shift", type=float, default=None,
                   help="Shift Gray slider (gray peak b)")
    g.add_argument("--span", type=float, default=None,
                   help="Span Gray slider (distance from b to the feet)")
    g.add_argument("--green-cut", type=float, default=None,
                   help="green intensity cut for the channel rule")
    g.add_argument("--patch-size", type=int, default=None,
                   help="odd neighborhood size, one of 3/5/7/9/11")
    g.add_argument("--classify-on", choices=["fuzzy", "raw"], default=None)
    g.add_argument("--variogram-distance", choices=["sequence", "euclidean"],
                   default=None)
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads (default 1)")
    p.add_argument("--tile-size", type=int, default=256)


def load_run_config(path: Path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise InvalidParams(f"{path}: run config must be a mapping")
    return data


def resolve_profile(ref: str) -> denoise.DenoiseProfile:
    if ref == "none":
        return denoise.DenoiseProfile(
            name="none", lb=spatial_stats.DEFAULT_LOWER_BOUND, steps=())
    if ref in denoise.BUILTIN_PROFILES:
        return denoise.builtin_profile(ref)
    path = Path(ref)
    if path.is_file():
        return denoise.load_profile(path)
    raise InvalidParams(
        f"profile {ref!r} is neither a builtin ({denoise.BUILTIN_PROFILES}) "
        f"nor an existing file")


def resolve_config(args) -> tuple[SegmentationConfig, denoise.DenoiseProfile]:
    """Merge profile, config file and flags (flags win, file beats profile)."""
    file_cfg = load_run_config(args.config) if args.config else {}
    profile_ref = args.profile
    if args.profile == "profile1" and "profile" in file_cfg:
        profile_ref = str(file_cfg["profile"])
    profile = resolve_profile(profile_ref)

    def pick(flag_value, key, fallback):
        if flag_value is not None:
            return flag_value
        if key in file_cfg and file_cfg[key] is not None:
            return file_cfg[key]
        return fallback

    shift = float(pick(args.shift, "shift_gray", 110.0))
    span = float(pick(args.span, "span_gray", 30.0))
    base = FuzzyParams(
        lower_cut=file_cfg.get("lower_cut"),
        upper_cut=file_cfg.get("upper_cut"))
    fuzzy = apply_sliders(shift, span, base)

    thresholds = SpatialThresholds(
        lb=float(pick(args.lb, "lb", profile.lb)),
        nav=float(pick(args.nav, "nav", spatial_stats.DEFAULT_NAV_THRESHOLD)),
        randomness=float(pick(args.randomness, "randomness",
                              spatial_stats.DEFAULT_RANDOMNESS_THRESHOLD)),
        patch_size=int(pick(args.patch_size, "patch_size",
                            spatial_stats.DEFAULT_PATCH_SIZE)))

    cfg = SegmentationConfig(
        fuzzy=fuzzy,
        thresholds=thresholds,
        green_cut=float(pick(args.green_cut, "green_cut", 100.0)),
        classify_on=pick(args.classify_on, "classify_on", "fuzzy"),
        variogram_distance=pick(args.variogram_distance,
                                "variogram_distance", "sequence"))
    return cfg, profile


def run_segmentation_to_file(input_path: Path, output_path: Path,
                             cfg: SegmentationConfig,
                             profile: denoise.DenoiseProfile,
                             threads: int = 1, tile_size: int = 256,
                             uncertainty_path: Path | None = None,
                             provenance_path: Path | None = None,
                             raw_mask_path: Path | None = None) -> None:
    """The single source of truth the service parity contract relies on."""
    img = image_io.load_image(input_path)
    result = segment(img, cfg, threads=threads, tile_size=tile_size)
    final = denoise.apply_profile(result.mask, profile)
    image_io.save_mask(final, output_path)
    if raw_mask_path is not None:
        image_io.save_mask(result.mask, raw_mask_path)
    if uncertainty_path is not None:
        gray = image_io.to_gray_average(img)
        overlay = image_io.render_uncertainty(gray, result.uncertainty)
        image_io.save_image(overlay, uncertainty_path)
    if provenance_path is not None:
        image_io.save_image(result.provenance_image(), provenance_path)


def cmd_segment(args) -> int:
    cfg, profile = resolve_config(args)
    start = time.perf_counter()
    run_segmentation_to_file(
        args.input, args.output, cfg, profile,
        threads=args.threads, tile_size=args.tile_size,
        uncertainty_path=args.uncertainty,
        provenance_path=args.provenance,
        raw_mask_path=args.raw_mask)
    elapsed = (time.perf_counter() - start) * 1000
    print(f"{args.output} written ({elapsed:.0f} ms, profile={profile.name}, "
          f"lb={cfg.thresholds.lb})")
    return 0


def cmd_batch(args) -> int:
    cfg, profile = resolve_config(args)
    if not args.input_dir.is_dir():
        raise FileNotFoundError(f"no such directory: {args.input_dir}")
    args.output_dir.mkdir(parents=True, exist_ok=True)
    files = sorted(p for p in args.input_dir.iterdir()
                   if p.suffix.lower() in RASTER_SUFFIXES)
    failures = 0
    start = time.perf_counter()

    def one(path: Path):
        t0 = time.perf_counter()
        out = args.output_dir / (path.stem + ".png")
        run_segmentation_to_file(path, out, cfg, profile, threads=1,
                                 tile_size=args.tile_size)
        return path.name, (time.perf_counter() - t0) * 1000

    if args.threads <= 1:
        results = []
        for path in files:
            try:
                results.append((one(path), None))
            except Exception as exc:  # keep the batch going
                results.append((None, (path.name, exc)))
    else:
        results = []
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            futures = {pool.submit(one, p): p for p in files}
            for fut, path in futures.items():
                try:
                    results.append((fut.result(), None))
                except Exception as exc:
                    results.append((None, (path.name, exc)))

    for ok, err in results:
        if ok is not None:
            name, ms = ok
            print(f"{name}: ok ({ms:.0f} ms)")
        else:
            name, exc = err
            failures += 1
            print(f"{name}: FAILED ({exc})", file=sys.stderr)

    wall = time.perf_counter() - start
    print(f"{len(files) - failures} processed, {failures} failed, "
          f"{wall:.2f} s wall")
    return 1 if failures else 0


def _calibration_patches(args) -> list[np.ndarray]:
    size = args.patch_size or spatial_stats.DEFAULT_PATCH_SIZE
    if args.patches is not None:
        stack = np.load(args.patches)
        if stack.ndim != 3:
            raise InvalidParams(
                f"{args.patches}: expected a (k, n, n) array, got {stack.shape}")
        return [stack[i] for i in range(stack.shape[0])]
    if args.backgrounds is None:
        raise InvalidParams("calibrate needs --backgrounds or --patches")
    if not args.backgrounds.is_dir():
        raise FileNotFoundError(f"no such directory: {args.backgrounds}")
    patches = []
    for path in sorted(args.backgrounds.iterdir()):
        if path.suffix.lower() not in RASTER_SUFFIXES:
            continue
        gray = image_io.to_gray_average(image_io.load_image(path))
        h, w = gray.shape
        if args.grid_stride:
            s = args.grid_stride
            for r0 in range(0, h - size + 1, s):
                for c0 in range(0, w - size + 1, s):
                    patches.append(gray[r0:r0 + size, c0:c0 + size].astype(float))
        else:
            # one sample per crop: the centered window
            patches.append(spatial_stats.extract_patch(
                gray, h // 2, w // 2, size).astype(float))
    return patches


def cmd_calibrate(args) -> int:
    patches = _calibration_patches(args)
    lb = spatial_stats.calibrate_lb(patches)
    print(f"{lb:.9f}")
    if args.write_profile is not None:
        base = resolve_profile(args.base)
        profile = denoise.DenoiseProfile(
            name=args.name or args.write_profile.stem, lb=lb, steps=base.steps)
        denoise.save_profile(profile, args.write_profile)
        print(f"profile written to {args.write_profile}", file=sys.stderr)
    return 0


def _metric_row(pred_path: Path, truth_path: Path) -> metrics.MetricReport:
    pred = image_io.load_mask(pred_path)
    truth = image_io.load_mask(truth_path)
    rep = metrics.pixel_metrics(metrics.confusion(pred, truth))
    try:
        rep.ssim = metrics.ssim(pred.astype(np.float64), truth.astype(np.float64))
    except BrightsegError:
        rep.ssim = None
    try:
        rep.hausdorff = metrics.hausdorff(pred, truth)
    except BrightsegError:
        rep.hausdorff = None
    return rep


def _load_groups(path: Path | None) -> dict[str, str]:
    if path is None:
        return {}
    import csv
    groups = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh):
            if len(row) >= 2 and row[0] != "image":
                groups[row[0]] = row[1]
    return groups


def cmd_eval(args) -> int:
    args.out_dir.mkdir(parents=True, exist_ok=True)
    groups_map = _load_groups(args.groups)

    if args.from_csv is not None:
        rows = [(image_id, groups_map.get(image_id, group), rep)
                for image_id, group, rep in metrics.read_image_csv(args.from_csv)]
    else:
        if args.pred_dir is None or args.truth_dir is None:
            raise InvalidParams("eval needs --pred-dir and --truth-dir "
                                "(or --from-csv)")
        pred_files = {p.name: p for p in args.pred_dir.iterdir()
                      if p.suffix.lower() in RASTER_SUFFIXES}
        truth_files = {p.name: p for p in args.truth_dir.iterdir()
                       if p.suffix.lower() in RASTER_SUFFIXES}
        for name in sorted(set(pred_files) ^ set(truth_files)):
            side = "truth" if name in pred_files else "prediction"
            print(f"unmatched: {name} has no {side} file", file=sys.stderr)
        common = sorted(set(pred_files) & set(truth_files))
        if not common:
            print("no matching prediction/truth pairs", file=sys.stderr)
            return 2
        rows = []
        for name in common:
            rep = _metric_row(pred_files[name], truth_files[name])
            rows.append((name, groups_map.get(name, "all"), rep))
            if args.overlays:
                overlay = image_io.render_comparison(
                    image_io.load_mask(pred_files[name]),
                    image_io.load_mask(truth_files[name]))
                image_io.save_image(overlay,
                                    args.out_dir / f"overlay_{Path(name).stem}.png")

    per_image = args.out_dir / "per_image.csv"
    per_group = args.out_dir / "groups.csv"
    metrics.write_image_csv(rows, per_image)
    metrics.write_group_csv(
        metrics.batch_report([(g, rep) for _, g, rep in rows]), per_group)
    print(f"{len(rows)} images scored; wrote {per_image} and {per_group}")
    return 0


def cmd_kappa(args) -> int:
    columns = metrics.read_ratings(args.ratings)
    for col in (args.col1, args.col2):
        if col not in columns:
            raise InvalidParams(f"ratings file has no column {col!r}; "
                                f"available: {sorted(c for c in columns if c != '_ids')}")
    kappa = metrics.cohens_kappa(columns[args.col1], columns[args.col2])
    print(f"{kappa:.6f}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    port = args.port or int(os.environ.get(DEFAULT_PORT_ENV, "8000"))
    app = create_app(asset_dir=args.assets, threads=args.threads,
                     idle_ttl=args.idle_ttl)
    uvicorn.run(app, host=args.host, port=port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brightseg",
        description="Unsupervised bright-field microscopy segmentation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="segment one image")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--output", type=Path, required=True)
    p.add_argument("--uncertainty", type=Path, default=None,
                   help="write the pink uncertainty overlay PNG here")
    p.add_argument("--provenance", type=Path, default=None,
                   help="write the per-pixel provenance raster here")
    p.add_argument("--raw-mask", type=Path, default=None,
                   help="write the pre-denoising mask here")
    _add_config_flags(p)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("batch", help="segment a directory of images")
    p.add_argument("--input-dir", type=Path, required=True)
    p.add_argument("--output-dir", type=Path, required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("calibrate",
                       help="estimate the homogeneity lower bound")
    p.add_argument("--backgrounds", type=Path, default=None,
                   help="directory of background crops (one centered patch "
                        "per crop unless --grid-stride is given)")
    p.add_argument("--patches", type=Path, default=None,
                   help=".npy file with a (k, n, n) float patch stack")
    p.add_argument("--patch-size", type=int, default=None)
    p.add_argument("--grid-stride", type=int, default=None,
                   help="sample a patch grid with this stride from each crop")
    p.add_argument("--write-profile", type=Path, default=None,
                   help="write a profile file carrying the calibrated lb")
    p.add_argument("--base", default="profile1",
                   help="profile whose steps the written profile copies")
    p.add_argument("--name", default=None, help="name for the written profile")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("eval", help="score masks against ground truth")
    p.add_argument("--pred-dir", type=Path, default=None)
    p.add_argument("--truth-dir", type=Path, default=None)
    p.add_argument("--from-csv", type=Path, default=None,
                   help="aggregate precomputed per-image rows instead of masks")
    p.add_argument("--groups", type=Path, default=None,
                   help="CSV mapping image filename to group label")
    p.add_argument("--out-dir", type=Path, required=True)
    p.add_argument("--overlays", action="store_true",
                   help="write agreement overlays next to the reports")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("kappa", help="Cohen's kappa between two raters")
    p.add_argument("--ratings", type=Path, required=True)
    p.add_argument("--col1", required=True)
    p.add_argument("--col2", required=True)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("serve", help="run the calibration HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help=f"default from ${DEFAULT_PORT_ENV} or 8000")
    p.add_argument("--assets", type=Path, default=None,
                   help="static directory served at / (the calibration UI)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--idle-ttl", type=float, default=1800.0,
                   help="seconds before idle sessions are evicted")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BrightsegError, InsufficientSamples) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
