"""Pixel confusion counts, IOU, loss, and per-clip reports.

Ground truth is the flow mask, prediction is the combined segmentation
mask. Per pixel: TP if both are set, FP if only the prediction, FN if
only the ground truth, TN if neither.

    IOU  = TP / (TP + FP + FN)      (1.0 when both masks are empty)
    loss = 1 - IOU
"""

import csv
import io
import json
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyClip, LengthMismatch

# per-pixel class labels in a confusion map (uint8 ndarray)
TP, FP, TN, FN = 0, 1, 2, 3

CSV_HEADER = ["frame", "tp", "fp", "tn", "fn", "iou", "loss"]


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class FrameMetrics:
    frame_index: int
    counts: ConfusionCounts
    iou: float
    loss: float


@dataclass(frozen=True)
class ClipReport:
    clip_name: str
    frames: list[FrameMetrics]
    average_iou: float
    average_loss: float


def confusion(ground_truth: np.ndarray, prediction: np.ndarray) -> tuple[ConfusionCounts, np.ndarray]:
    """Counts plus the per-pixel class map for one frame pair of masks."""
    gt = np.asarray(ground_truth, dtype=bool)
    pred = np.asarray(prediction, dtype=bool)
    if gt.shape != pred.shape:
        raise DimensionMismatch(f"ground truth {gt.shape} vs prediction {pred.shape}")
    labels = np.full(gt.shape, TN, dtype=np.uint8)
    labels[gt & pred] = TP
    labels[~gt & pred] = FP
    labels[gt & ~pred] = FN
    counts = ConfusionCounts(
        tp=int((labels == TP).sum()),
        fp=int((labels == FP).sum()),
        tn=int((labels == TN).sum()),
        fn=int((labels == FN).sum()),
    )
    return counts, labels


def iou(counts: ConfusionCounts) -> float:
    """Intersection over union; 1.0 when both masks are empty (tp+fp+fn=0)."""
    denom = counts.tp + counts.fp + counts.fn
    if denom == 0:
        return 1.0
    return counts.tp / denom


def loss(counts: ConfusionCounts) -> float:
    return 1.0 - iou(counts)


def frame_metrics(index: int, ground_truth: np.ndarray, prediction: np.ndarray) -> FrameMetrics:
    counts, _ = confusion(ground_truth, prediction)
    i = iou(counts)
    return FrameMetrics(frame_index=index, counts=counts, iou=i, loss=1.0 - i)


def evaluate_clip(
    clip_name: str,
    flow_masks: Sequence[np.ndarray],
    seg_masks: Sequence[np.ndarray],
) -> ClipReport:
    """Per-frame metrics for a clip plus arithmetic-mean aggregates.

    Sums accumulate in float64 in frame order with a single final divide,
    so the averages are deterministic for a given frame order.
    """
    if len(flow_masks) != len(seg_masks):
        raise LengthMismatch(f"{len(flow_masks)} flow masks vs {len(seg_masks)} seg masks")
    if len(flow_masks) == 0:
        raise EmptyClip(f"clip {clip_name!r} has no frames")
    frames = [frame_metrics(i, gt, pred) for i, (gt, pred) in enumerate(zip(flow_masks, seg_masks))]
    sum_iou = 0.0
    sum_loss = 0.0
    for fm in frames:
        sum_iou += fm.iou
        sum_loss += fm.loss
    n = len(frames)
    return ClipReport(clip_name, frames, average_iou=sum_iou / n, average_loss=sum_loss / n)


def write_report_csv(report: ClipReport) -> bytes:
    """CSV report: one row per frame plus a trailing average row.

    Reals carry 6 decimal places (round-half-even); output bytes are
    deterministic for identical reports.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for fm in report.frames:
        c = fm.counts
        writer.writerow(
            [fm.frame_index, c.tp, c.fp, c.tn, c.fn, f"{fm.iou:.6f}", f"{fm.loss:.6f}"]
        )
    writer.writerow(
        ["average", "", "", "", "", f"{report.average_iou:.6f}", f"{report.average_loss:.6f}"]
    )
    return buf.getvalue().encode("ascii")


def write_report_json(report: ClipReport) -> bytes:
    """JSON report mirroring the ClipReport structure, byte-deterministic."""
    doc = {
        "clip_name": report.clip_name,
        "frames": [
            {
                "frame": fm.frame_index,
                "tp": fm.counts.tp,
                "fp": fm.counts.fp,
                "tn": fm.counts.tn,
                "fn": fm.counts.fn,
                "iou": fm.iou,
                "loss": fm.loss,
            }
            for fm in report.frames
        ],
        "average_iou": report.average_iou,
        "average_loss": report.average_loss,
    }
    return (json.dumps(doc, indent=2) + "\n").encode("ascii")


def write_summary_csv(reports: Sequence[ClipReport]) -> bytes:
    """Multi-clip summary table: one average row per clip."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["clip", "frames", "average_iou", "average_loss"])
    for r in reports:
        writer.writerow(
            [r.clip_name, len(r.frames), f"{r.average_iou:.6f}", f"{r.average_loss:.6f}"]
        )
    return buf.getvalue().encode("utf-8")
