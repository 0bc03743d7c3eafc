"""Command-line pipeline over directories of frames, flows, and masks.

Subcommands mirror the pipeline stages:

    flowmask extract  video.mp4 frames/            # FFmpeg frame dump
    flowmask flow     frames/ flows/               # .flo per frame pair
    flowmask mask     flows/ flowmasks/ -t 1.0     # magnitude-method masks
    flowmask eval     flowmasks/ segmasks/ -o out/ # IOU/loss report
    flowmask sweep    flows/ segmasks/ -T 0.5,1,2 -o sweep.csv

Frame order is lexicographic over filenames everywhere. Segmentation
masks may be one combined mask file per frame, or one subdirectory per
frame holding per-object masks (combined by pixel-wise OR). The FFmpeg
binary is taken from $FLOWMASK_FFMPEG when set, else "ffmpeg" on PATH.

Exit status is 0 iff the command wrote its artifact; on failure a single
line "error: <Category>: <detail>" goes to stderr.
"""

import argparse
import json
import os
import subprocess
import sys
from dataclasses import asdict

from . import metrics
from .errors import (
    DimensionMismatch,
    EmptyClip,
    FfmpegFailed,
    FfmpegNotFound,
    FlowmaskError,
    LengthMismatch,
)
from .flow_io import load_flo, save_flo
from .image_io import (
    DEFAULT_MASK_CUTOFF,
    mask_from_image,
    mask_to_image,
    read_pgm,
    read_png_gray,
    write_pgm,
)
from .magnitude import DEFAULT_THRESHOLD, magnitude_method, threshold_sweep
from .metrics import evaluate_clip, write_report_csv, write_report_json, write_summary_csv
from .reference_flow import HsParams, estimate_flow
from .segmentation import artifact_candidates, combine_masks
from .visualization import colorize_confusion, colorize_flow, write_png_rgb

IMAGE_EXTS = (".pgm", ".png")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except FlowmaskError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowmask",
        description="Motion ground-truth masks from optical flow and IOU/loss evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="split a video into grayscale frames via FFmpeg")
    p.add_argument("video")
    p.add_argument("out_dir")
    p.add_argument("--fps", type=float, default=None, help="resample to this frame rate")
    p.add_argument("--format", choices=["pgm", "png"], default="pgm")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("flow", help="estimate or ingest dense flow per frame pair")
    p.add_argument("frames_dir")
    p.add_argument("out_dir")
    p.add_argument("--engine", choices=["horn-schunck", "file"], default="horn-schunck")
    p.add_argument("--source", help="directory of precomputed .flo files (engine=file)")
    p.add_argument("--alpha", type=float, default=15.0, help="smoothness weight")
    p.add_argument("--iterations", type=int, default=200)
    p.add_argument("--levels", type=int, default=3, help="pyramid levels")
    p.add_argument("--sanitize-nonfinite", action="store_true",
                   help="map NaN/inf vectors in ingested .flo files to (0,0)")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("mask", help="magnitude-method flow masks from .flo files")
    p.add_argument("flows_dir")
    p.add_argument("out_dir")
    p.add_argument("-t", "--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--sanitize-nonfinite", action="store_true")
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("eval", help="score segmentation masks against flow masks")
    p.add_argument("flowmasks_dir", nargs="?")
    p.add_argument("segmasks", nargs="?",
                   help="combined mask files, or per-frame subdirectories of per-object masks")
    p.add_argument("-o", "--out", required=True, help="output directory")
    p.add_argument("--manifest", help="JSON manifest of clips for a multi-clip summary")
    p.add_argument("--clip-name", default="clip")
    p.add_argument("--min-artifact-area", type=int, default=1)
    p.add_argument("--cutoff", type=int, default=DEFAULT_MASK_CUTOFF,
                   help="intensity cutoff when reading masks from images")
    p.add_argument("--viz", action="store_true", help="write confusion-map images")
    p.add_argument("--flows-dir", help="also write flow colorizations from this .flo directory")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="average loss/IOU over a range of thresholds")
    p.add_argument("flows_dir")
    p.add_argument("segmasks")
    p.add_argument("-T", "--thresholds", required=True,
                   help="comma-separated ascending thresholds, e.g. 0.5,1,2")
    p.add_argument("-o", "--out", required=True, help="output CSV path")
    p.add_argument("--cutoff", type=int, default=DEFAULT_MASK_CUTOFF)
    p.add_argument("--sanitize-nonfinite", action="store_true")
    p.set_defaults(func=cmd_sweep)

    return parser


# --- subcommands ---

def cmd_extract(args) -> None:
    ffmpeg = os.environ.get("FLOWMASK_FFMPEG", "ffmpeg")
    os.makedirs(args.out_dir, exist_ok=True)
    pattern = os.path.join(args.out_dir, f"frame_%06d.{args.format}")
    cmd = [ffmpeg, "-y", "-i", args.video]
    if args.fps is not None:
        cmd += ["-vf", f"fps={args.fps:g}"]
    cmd += ["-pix_fmt", "gray", pattern]
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True)
    except FileNotFoundError:
        raise FfmpegNotFound(
            f"{ffmpeg!r} not found; install FFmpeg or set FLOWMASK_FFMPEG to its path"
        ) from None
    if proc.returncode != 0:
        raise FfmpegFailed(f"ffmpeg exited {proc.returncode}: {proc.stderr.strip()[-2000:]}")
    print(f"extracted frames to {args.out_dir}")


def cmd_flow(args) -> None:
    frame_files = _list_files(args.frames_dir, IMAGE_EXTS)
    if len(frame_files) < 2:
        raise EmptyClip(f"need at least 2 frames in {args.frames_dir}, found {len(frame_files)}")
    os.makedirs(args.out_dir, exist_ok=True)
    if args.engine == "file":
        if not args.source:
            raise FlowmaskError("engine=file requires --source")
        flo_files = _list_files(args.source, (".flo",))
        if len(flo_files) != len(frame_files) - 1:
            raise LengthMismatch(
                f"{len(frame_files)} frames need {len(frame_files) - 1} .flo files, "
                f"found {len(flo_files)} in {args.source}"
            )
        flows = [load_flo(p, sanitize_nonfinite=args.sanitize_nonfinite) for p in flo_files]
    else:
        params = HsParams(alpha=args.alpha, iterations=args.iterations,
                          pyramid_levels=args.levels)
        images = [_read_gray(p) for p in frame_files]
        shape = images[0].shape
        for p, img in zip(frame_files, images):
            if img.shape != shape:
                raise DimensionMismatch(f"{p} has shape {img.shape}, expected {shape}")
        flows = [estimate_flow(images[i], images[i + 1], params)
                 for i in range(len(images) - 1)]
    for src, field in zip(frame_files, flows):
        out = os.path.join(args.out_dir, _stem(src) + ".flo")
        save_flo(out, field)
        print(out)


def cmd_mask(args) -> None:
    flo_files = _list_files(args.flows_dir, (".flo",))
    if not flo_files:
        raise EmptyClip(f"no .flo files in {args.flows_dir}")
    os.makedirs(args.out_dir, exist_ok=True)
    for path in flo_files:
        field = load_flo(path, sanitize_nonfinite=args.sanitize_nonfinite)
        mask = magnitude_method(field, args.threshold)
        out = os.path.join(args.out_dir, _stem(path) + ".pgm")
        with open(out, "wb") as fh:
            fh.write(write_pgm(mask_to_image(mask)))
        print(f"{out} {int(mask.sum())}")


def cmd_eval(args) -> None:
    os.makedirs(args.out, exist_ok=True)
    if args.manifest:
        with open(args.manifest) as fh:
            manifest = json.load(fh)
        reports = []
        for clip in manifest["clips"]:
            report = _eval_one_clip(
                clip["name"], clip["flow_masks"], clip["seg_masks"],
                os.path.join(args.out, clip["name"]), args,
            )
            reports.append(report)
        summary = os.path.join(args.out, "summary.csv")
        with open(summary, "wb") as fh:
            fh.write(write_summary_csv(reports))
        print(summary)
        return
    if not args.flowmasks_dir or not args.segmasks:
        raise FlowmaskError("eval needs FLOWMASKS_DIR and SEGMASKS (or --manifest)")
    _eval_one_clip(args.clip_name, args.flowmasks_dir, args.segmasks, args.out, args)


def _eval_one_clip(name, flowmasks_dir, segmasks_path, out_dir, args) -> metrics.ClipReport:
    os.makedirs(out_dir, exist_ok=True)
    flow_masks = [mask_from_image(_read_gray(p), args.cutoff)
                  for p in _list_files(flowmasks_dir, IMAGE_EXTS)]
    if not flow_masks:
        raise EmptyClip(f"no flow masks in {flowmasks_dir}")
    seg_masks = _load_segmasks(segmasks_path, args.cutoff,
                               (flow_masks[0].shape[0], flow_masks[0].shape[1]))
    report = evaluate_clip(name, flow_masks, seg_masks)

    csv_path = os.path.join(out_dir, "report.csv")
    with open(csv_path, "wb") as fh:
        fh.write(write_report_csv(report))
    with open(os.path.join(out_dir, "report.json"), "wb") as fh:
        fh.write(write_report_json(report))

    artifacts = {}
    for i, (fm, sm) in enumerate(zip(flow_masks, seg_masks)):
        regions = artifact_candidates(sm, fm, min_area=args.min_artifact_area)
        artifacts[str(i)] = [asdict(r) for r in regions]
    with open(os.path.join(out_dir, "artifacts.json"), "w") as fh:
        json.dump(artifacts, fh, indent=2)
        fh.write("\n")

    if args.viz:
        viz_dir = os.path.join(out_dir, "viz")
        os.makedirs(viz_dir, exist_ok=True)
        for i, (fm, sm) in enumerate(zip(flow_masks, seg_masks)):
            _, labels = metrics.confusion(fm, sm)
            with open(os.path.join(viz_dir, f"confusion_{i:06d}.png"), "wb") as fh:
                fh.write(write_png_rgb(colorize_confusion(labels)))
        if args.flows_dir:
            for i, path in enumerate(_list_files(args.flows_dir, (".flo",))):
                field = load_flo(path)
                with open(os.path.join(viz_dir, f"flow_{i:06d}.png"), "wb") as fh:
                    fh.write(write_png_rgb(colorize_flow(field)))

    print(csv_path)
    return report


def cmd_sweep(args) -> None:
    try:
        thresholds = [float(t) for t in args.thresholds.split(",") if t.strip()]
    except ValueError:
        raise FlowmaskError(f"unparsable thresholds {args.thresholds!r}") from None
    if not thresholds:
        raise FlowmaskError("thresholds list is empty")
    flo_files = _list_files(args.flows_dir, (".flo",))
    if not flo_files:
        raise EmptyClip(f"no .flo files in {args.flows_dir}")
    flows = [load_flo(p, sanitize_nonfinite=args.sanitize_nonfinite) for p in flo_files]
    seg_masks = _load_segmasks(args.segmasks, args.cutoff,
                               (flows[0].height, flows[0].width))
    rows = threshold_sweep(flows, seg_masks, thresholds)
    lines = ["threshold,avg_iou,avg_loss"]
    lines += [f"{r.threshold:g},{r.average_iou:.6f},{r.average_loss:.6f}" for r in rows]
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(args.out)


# --- shared helpers ---

def _list_files(directory, exts) -> list[str]:
    if not os.path.isdir(directory):
        raise FlowmaskError(f"not a directory: {directory}")
    names = sorted(n for n in os.listdir(directory)
                   if n.lower().endswith(exts)
                   and os.path.isfile(os.path.join(directory, n)))
    return [os.path.join(directory, n) for n in names]


def _list_subdirs(directory) -> list[str]:
    names = sorted(n for n in os.listdir(directory)
                   if os.path.isdir(os.path.join(directory, n)))
    return [os.path.join(directory, n) for n in names]


def _stem(path) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def _read_gray(path):
    with open(path, "rb") as fh:
        data = fh.read()
    if path.lower().endswith(".pgm"):
        return read_pgm(data)
    return read_png_gray(data)


def _load_segmasks(path, cutoff, shape) -> list:
    """Combined-mask files, or per-frame subdirectories of per-object masks."""
    subdirs = _list_subdirs(path)
    if subdirs:
        masks = []
        for d in subdirs:
            objects = [mask_from_image(_read_gray(p), cutoff)
                       for p in _list_files(d, IMAGE_EXTS)]
            masks.append(combine_masks(objects, shape=shape))
        return masks
    return [mask_from_image(_read_gray(p), cutoff) for p in _list_files(path, IMAGE_EXTS)]


if __name__ == "__main__":
    sys.exit(main())
