"""Combining per-object detector masks and extracting artifact regions.

A frame-level segmentation mask is the pixel-wise OR of every per-object
mask the detector emitted for that frame. Detections outside the flow
mask (false-positive pixels) are grouped into connected components and
reported as likely sporadic-artifact regions.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import DimensionMismatch

_STRUCTURE_4 = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
_STRUCTURE_8 = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class ArtifactRegion:
    """One connected blob of pixels, reported as a candidate artifact."""

    area: int
    bounding_box: tuple[int, int, int, int]  # (min_x, min_y, max_x, max_y), inclusive
    centroid: tuple[float, float]  # (x, y), mean of member pixel coordinates


def combine_masks(
    masks: Sequence[np.ndarray],
    shape: tuple[int, int] | None = None,
) -> np.ndarray:
    """Pixel-wise OR of per-object masks into one frame-level mask.

    With an empty sequence, ``shape`` (height, width) must be given and the
    all-false mask of that shape is returned.
    """
    if len(masks) == 0:
        if shape is None:
            raise ValueError("shape required when combining zero masks")
        return np.zeros(shape, dtype=bool)
    first = np.asarray(masks[0], dtype=bool)
    out = first.copy()
    for i, m in enumerate(masks[1:], start=1):
        m = np.asarray(m, dtype=bool)
        if m.shape != first.shape:
            raise DimensionMismatch(f"mask {i} has shape {m.shape}, expected {first.shape}")
        out |= m
    if shape is not None and tuple(shape) != out.shape:
        raise DimensionMismatch(f"masks have shape {out.shape}, expected {tuple(shape)}")
    return out


def connected_components(mask: np.ndarray, connectivity: int = 8) -> list[ArtifactRegion]:
    """Maximal connected regions of member pixels.

    Returned sorted by descending area, ties broken by the bounding box's
    (min_y, min_x).
    """
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    mask = np.asarray(mask, dtype=bool)
    structure = _STRUCTURE_4 if connectivity == 4 else _STRUCTURE_8
    labels, count = ndimage.label(mask, structure=structure)
    regions = []
    for idx, sl in enumerate(ndimage.find_objects(labels), start=1):
        ys, xs = np.nonzero(labels[sl] == idx)
        ys = ys + sl[0].start
        xs = xs + sl[1].start
        regions.append(
            ArtifactRegion(
                area=int(len(ys)),
                bounding_box=(int(xs.min()), int(ys.min()), int(xs.max()), int(ys.max())),
                centroid=(float(xs.mean()), float(ys.mean())),
            )
        )
    regions.sort(key=lambda r: (-r.area, r.bounding_box[1], r.bounding_box[0]))
    return regions


def artifact_candidates(
    segmask: np.ndarray,
    flowmask: np.ndarray,
    min_area: int = 1,
    connectivity: int = 8,
) -> list[ArtifactRegion]:
    """Connected false-positive regions: detected but not moving.

    Components of (segmask AND NOT flowmask) with area >= min_area, in
    the same order as connected_components.
    """
    segmask = np.asarray(segmask, dtype=bool)
    flowmask = np.asarray(flowmask, dtype=bool)
    if segmask.shape != flowmask.shape:
        raise DimensionMismatch(
            f"segmentation mask {segmask.shape} vs flow mask {flowmask.shape}"
        )
    if min_area < 1:
        raise ValueError(f"min_area must be >= 1, got {min_area}")
    fp = segmask & ~flowmask
    return [r for r in connected_components(fp, connectivity) if r.area >= min_area]
