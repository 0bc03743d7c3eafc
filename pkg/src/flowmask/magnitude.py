"""The magnitude method: flow field -> motion ground-truth mask.

Per-pixel motion magnitude is sqrt(u^2 + v^2); a pixel enters the flow
mask iff its magnitude is strictly greater than the threshold. The
threshold is a free parameter chosen by guess-and-check; threshold_sweep
mechanizes that search over a clip.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, LengthMismatch
from .flow_io import FlowField

DEFAULT_THRESHOLD = 1.0


def flow_magnitude(field: FlowField) -> np.ndarray:
    """Per-pixel Euclidean motion magnitude, float64, shape (H, W).

    Computed in 64-bit so magnitudes near the 1e9 bound do not overflow
    the 32-bit inputs when squared.
    """
    return np.hypot(field.u.astype(np.float64), field.v.astype(np.float64))


def magnitude_method(field: FlowField, threshold: float = DEFAULT_THRESHOLD) -> np.ndarray:
    """Flow mask: pixels whose magnitude strictly exceeds the threshold."""
    _check_threshold(threshold)
    return flow_magnitude(field) > threshold


@dataclass(frozen=True)
class SweepRow:
    threshold: float
    average_iou: float
    average_loss: float


def threshold_sweep(
    flows: Sequence[FlowField],
    segmasks: Sequence[np.ndarray],
    thresholds: Sequence[float],
) -> list[SweepRow]:
    """Evaluate the clip at each candidate threshold.

    For every threshold, every flow field is turned into a flow mask and
    scored against the paired segmentation mask; rows come back in input
    threshold order with the clip's average IOU and loss.
    """
    from .metrics import evaluate_clip

    if len(thresholds) == 0:
        raise ValueError("thresholds must be non-empty")
    for t in thresholds:
        _check_threshold(t)
    if len(flows) != len(segmasks):
        raise LengthMismatch(f"{len(flows)} flows vs {len(segmasks)} segmentation masks")
    for i, (f, m) in enumerate(zip(flows, segmasks)):
        if (f.height, f.width) != m.shape:
            raise DimensionMismatch(
                f"frame {i}: flow {f.width}x{f.height} vs mask {m.shape[1]}x{m.shape[0]}"
            )
    rows = []
    for t in thresholds:
        flow_masks = [magnitude_method(f, t) for f in flows]
        report = evaluate_clip(f"threshold={t:g}", flow_masks, list(segmasks))
        rows.append(SweepRow(float(t), report.average_iou, report.average_loss))
    return rows


def _check_threshold(threshold: float) -> None:
    if not np.isfinite(threshold) or threshold < 0:
        raise ValueError(f"threshold must be finite and >= 0, got {threshold}")
