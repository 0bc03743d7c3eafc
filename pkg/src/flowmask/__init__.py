"""flowmask: motion ground-truth masks from dense optical flow, and
IOU/loss evaluation of object-detection segmentation masks against them.

Pipeline: frames -> dense flow (.flo, from any estimator or the built-in
Horn-Schunck reference) -> per-pixel magnitude threshold -> flow mask
(the motion ground truth) -> pixel confusion / IOU / loss against the
OR-combined detector masks, with false-positive regions reported as
likely sporadic-artifact detections.
"""

from .errors import FlowmaskError
from .flow_io import FlowField, load_flo, parse_flo, save_flo, write_flo
from .image_io import (
    mask_from_image,
    mask_to_image,
    read_pgm,
    read_png_gray,
    write_pgm,
    write_png_gray,
)
from .magnitude import SweepRow, flow_magnitude, magnitude_method, threshold_sweep
from .metrics import (
    ClipReport,
    ConfusionCounts,
    FrameMetrics,
    confusion,
    evaluate_clip,
    iou,
    loss,
    write_report_csv,
    write_report_json,
)
from .reference_flow import HsParams, estimate_clip_flows, estimate_flow
from .segmentation import (
    ArtifactRegion,
    artifact_candidates,
    combine_masks,
    connected_components,
)
from .synthetic import RenderedClip, SceneSpec, Sprite, render_clip, save_clip
from .visualization import colorize_confusion, colorize_flow, overlay_mask

__version__ = "0.1.0"

__all__ = [
    "ArtifactRegion",
    "ClipReport",
    "ConfusionCounts",
    "FlowField",
    "FlowmaskError",
    "FrameMetrics",
    "HsParams",
    "RenderedClip",
    "SceneSpec",
    "Sprite",
    "SweepRow",
    "artifact_candidates",
    "colorize_confusion",
    "colorize_flow",
    "combine_masks",
    "confusion",
    "connected_components",
    "estimate_clip_flows",
    "estimate_flow",
    "evaluate_clip",
    "flow_magnitude",
    "iou",
    "load_flo",
    "loss",
    "magnitude_method",
    "mask_from_image",
    "mask_to_image",
    "overlay_mask",
    "parse_flo",
    "read_pgm",
    "read_png_gray",
    "render_clip",
    "save_clip",
    "save_flo",
    "threshold_sweep",
    "write_flo",
    "write_pgm",
    "write_png_gray",
    "write_report_csv",
    "write_report_json",
]
