"""Built-in Horn-Schunck dense optical-flow estimator.

Keeps the pipeline runnable end-to-end without an external flow network:
any flow source that produces .flo files can replace it. Accuracy parity
with learned estimators is not a goal.

The solver minimizes the classic energy

    integral (Ix*u + Iy*v + It)^2 + alpha^2 * (|grad u|^2 + |grad v|^2)

by synchronous Jacobi iteration (all updates read the previous iterate),
with central-difference gradients and reflected boundaries, coarse to
fine over a factor-2 pyramid with bilinear up/downsampling and backward
warping between levels. Zero initialization at the coarsest level and a
fixed iteration count make the result fully deterministic.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import DimensionMismatch, EmptyClip, TooSmall
from .flow_io import FlowField

MIN_FRAME_SIDE = 8

# weights of the neighbourhood average in the Jacobi update
_AVG_KERNEL = np.array(
    [
        [1 / 12, 1 / 6, 1 / 12],
        [1 / 6, 0.0, 1 / 6],
        [1 / 12, 1 / 6, 1 / 12],
    ]
)


@dataclass(frozen=True)
class HsParams:
    """Solver parameters: smoothness weight, sweeps, pyramid depth."""

    alpha: float = 15.0
    iterations: int = 200
    pyramid_levels: int = 3

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.pyramid_levels < 1:
            raise ValueError(f"pyramid_levels must be >= 1, got {self.pyramid_levels}")


def estimate_flow(
    frame_a: np.ndarray,
    frame_b: np.ndarray,
    params: HsParams = HsParams(),
) -> FlowField:
    """Dense flow from frame_a to frame_b."""
    a = np.asarray(frame_a, dtype=np.float64)
    b = np.asarray(frame_b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"frame_a {a.shape} vs frame_b {b.shape}")
    h, w = a.shape
    if h < MIN_FRAME_SIDE or w < MIN_FRAME_SIDE:
        raise TooSmall(f"frames must be at least {MIN_FRAME_SIDE}x{MIN_FRAME_SIDE}, got {w}x{h}")
    if 2 ** (params.pyramid_levels - 1) > min(h, w):
        raise TooSmall(
            f"{params.pyramid_levels} pyramid levels need min side >= "
            f"{2 ** (params.pyramid_levels - 1)}, got {min(h, w)}"
        )

    shapes = [(h, w)]
    for _ in range(params.pyramid_levels - 1):
        ph, pw = shapes[-1]
        shapes.append((max(4, (ph + 1) // 2), max(4, (pw + 1) // 2)))
    shapes.reverse()  # coarsest first

    pyr_a = [_downsample(a, s) for s in shapes]
    pyr_b = [_downsample(b, s) for s in shapes]

    u = np.zeros(shapes[0])
    v = np.zeros(shapes[0])
    for level, (la, lb) in enumerate(zip(pyr_a, pyr_b)):
        if level > 0:
            u, v = _upsample_flow(u, v, la.shape)
        du, dv = _solve_level(la, _warp(lb, u, v), params)
        u = u + du
        v = v + dv
    return FlowField(np.stack([u, v], axis=-1).astype(np.float32))


def estimate_clip_flows(
    frames: Sequence[np.ndarray],
    params: HsParams = HsParams(),
) -> list[FlowField]:
    """One flow field per consecutive frame pair (i, i+1), in order."""
    if len(frames) < 2:
        raise EmptyClip(f"need at least 2 frames, got {len(frames)}")
    shape = np.asarray(frames[0]).shape
    for i, f in enumerate(frames):
        if np.asarray(f).shape != shape:
            raise DimensionMismatch(f"frame {i} has shape {np.asarray(f).shape}, expected {shape}")
    return [estimate_flow(frames[i], frames[i + 1], params) for i in range(len(frames) - 1)]


def _solve_level(a: np.ndarray, b: np.ndarray, params: HsParams) -> tuple[np.ndarray, np.ndarray]:
    """Jacobi sweeps for the flow increment between a and the warped b."""
    ix = 0.5 * (_dx(a) + _dx(b))
    iy = 0.5 * (_dy(a) + _dy(b))
    it = b - a
    den = params.alpha ** 2 + ix ** 2 + iy ** 2
    du = np.zeros_like(a)
    dv = np.zeros_like(a)
    for _ in range(params.iterations):
        du_bar = ndimage.correlate(du, _AVG_KERNEL, mode="reflect")
        dv_bar = ndimage.correlate(dv, _AVG_KERNEL, mode="reflect")
        t = (ix * du_bar + iy * dv_bar + it) / den
        du = du_bar - ix * t
        dv = dv_bar - iy * t
    return du, dv


def _dx(img: np.ndarray) -> np.ndarray:
    return ndimage.correlate1d(img, [-0.5, 0.0, 0.5], axis=1, mode="reflect")


def _dy(img: np.ndarray) -> np.ndarray:
    return ndimage.correlate1d(img, [-0.5, 0.0, 0.5], axis=0, mode="reflect")


def _warp(img: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Backward-warp img by (u, v) with bilinear sampling, reflected borders."""
    h, w = img.shape
    yy, xx = np.meshgrid(np.arange(h, dtype=np.float64), np.arange(w, dtype=np.float64), indexing="ij")
    return ndimage.map_coordinates(img, [yy + v, xx + u], order=1, mode="reflect")


def _resize_bilinear(img: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    h, w = img.shape
    nh, nw = shape
    rows = np.linspace(0.0, h - 1.0, nh)
    cols = np.linspace(0.0, w - 1.0, nw)
    grid = np.meshgrid(rows, cols, indexing="ij")
    return ndimage.map_coordinates(img, grid, order=1, mode="reflect")


def _downsample(img: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    if img.shape == shape:
        return img
    smoothed = img
    # one smoothing pass per halving to limit aliasing
    steps = int(np.ceil(np.log2(max(img.shape[0] / shape[0], img.shape[1] / shape[1], 1.0))))
    for _ in range(max(steps, 1)):
        smoothed = ndimage.gaussian_filter(smoothed, sigma=1.0, mode="reflect")
    return _resize_bilinear(smoothed, shape)


def _upsample_flow(
    u: np.ndarray, v: np.ndarray, shape: tuple[int, int]
) -> tuple[np.ndarray, np.ndarray]:
    ch, cw = u.shape
    nh, nw = shape
    su = (nw - 1) / (cw - 1) if cw > 1 else 1.0
    sv = (nh - 1) / (ch - 1) if ch > 1 else 1.0
    return _resize_bilinear(u, shape) * su, _resize_bilinear(v, shape) * sv
