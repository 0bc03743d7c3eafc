"""Flow colorization and confusion-map rendering.

Flow rendering follows the standard Middlebury color wheel: direction
maps to hue around a 55-entry wheel (RY/YG/GC/CB/BM/MR segments) and
magnitude, normalized per frame by the frame's maximum, maps to
saturation. Zero motion renders pure white, so a stationary background
is white. The wheel orientation is fixed: hue angle is atan2(-v, -u).

RGB images are uint8 ndarrays of shape (height, width, 3).
"""

import io

import numpy as np
from PIL import Image

from . import metrics
from .errors import DimensionMismatch
from .flow_io import FlowField

CONFUSION_PALETTE = {
    metrics.TP: (0, 200, 0),     # green
    metrics.FP: (220, 0, 0),     # red
    metrics.FN: (230, 200, 0),   # yellow
    metrics.TN: (0, 0, 0),       # black
}


def _make_colorwheel() -> np.ndarray:
    """55x3 float array in [0,1]: the Middlebury/Baker flow color wheel."""
    RY, YG, GC, CB, BM, MR = 15, 6, 4, 11, 13, 6
    ncols = RY + YG + GC + CB + BM + MR
    wheel = np.zeros((ncols, 3))
    col = 0
    wheel[0:RY, 0] = 1.0
    wheel[0:RY, 1] = np.arange(RY) / RY
    col += RY
    wheel[col:col + YG, 0] = 1.0 - np.arange(YG) / YG
    wheel[col:col + YG, 1] = 1.0
    col += YG
    wheel[col:col + GC, 1] = 1.0
    wheel[col:col + GC, 2] = np.arange(GC) / GC
    col += GC
    wheel[col:col + CB, 1] = 1.0 - np.arange(CB) / CB
    wheel[col:col + CB, 2] = 1.0
    col += CB
    wheel[col:col + BM, 2] = 1.0
    wheel[col:col + BM, 0] = np.arange(BM) / BM
    col += BM
    wheel[col:col + MR, 2] = 1.0 - np.arange(MR) / MR
    wheel[col:col + MR, 0] = 1.0
    return wheel


_COLORWHEEL = _make_colorwheel()


def colorize_flow(field: FlowField, fixed_scale: float | None = None) -> np.ndarray:
    """Render a flow field with the color-wheel encoding.

    Saturation is magnitude over the frame's own maximum (so renderings of
    different frames are not magnitude-comparable); pass ``fixed_scale`` to
    normalize by a shared magnitude instead. A frame with no motion at all
    renders entirely white.
    """
    u = field.u.astype(np.float64)
    v = field.v.astype(np.float64)
    mag = np.hypot(u, v)
    if fixed_scale is not None:
        if fixed_scale <= 0:
            raise ValueError(f"fixed_scale must be positive, got {fixed_scale}")
        maxmag = float(fixed_scale)
    else:
        maxmag = float(mag.max())
    if maxmag == 0.0:
        return np.full((field.height, field.width, 3), 255, dtype=np.uint8)

    rad = mag / maxmag
    angle = np.arctan2(-v, -u) / np.pi  # in [-1, 1]
    ncols = _COLORWHEEL.shape[0]
    fk = (angle + 1.0) / 2.0 * (ncols - 1)
    k0 = np.floor(fk).astype(int) % ncols
    k1 = (k0 + 1) % ncols
    f = fk - np.floor(fk)

    out = np.empty((field.height, field.width, 3), dtype=np.uint8)
    for ch in range(3):
        col0 = _COLORWHEEL[k0, ch]
        col1 = _COLORWHEEL[k1, ch]
        col = (1.0 - f) * col0 + f * col1
        inside = rad <= 1.0
        # desaturate toward white with decreasing magnitude
        col = np.where(inside, 1.0 - rad * (1.0 - col), col * 0.75)
        out[..., ch] = np.floor(255.0 * col).astype(np.uint8)
    return out


def colorize_confusion(labels: np.ndarray) -> np.ndarray:
    """Paint a confusion map with the fixed TP/FP/FN/TN palette."""
    labels = np.asarray(labels)
    lut = np.zeros((256, 3), dtype=np.uint8)
    for label, rgb in CONFUSION_PALETTE.items():
        lut[label] = rgb
    return lut[labels]


def overlay_mask(
    frame: np.ndarray,
    mask: np.ndarray,
    tint: tuple[int, int, int],
    opacity: float,
) -> np.ndarray:
    """Blend a tint over mask pixels of a grayscale frame.

    Non-members replicate the gray value into all channels; members get
    the affine blend (1-opacity)*gray + opacity*tint, rounded half-even.
    """
    frame = np.asarray(frame, dtype=np.uint8)
    mask = np.asarray(mask, dtype=bool)
    if frame.shape != mask.shape:
        raise DimensionMismatch(f"frame {frame.shape} vs mask {mask.shape}")
    if not 0.0 <= opacity <= 1.0:
        raise ValueError(f"opacity must be in [0, 1], got {opacity}")
    gray = frame.astype(np.float64)
    out = np.repeat(gray[..., None], 3, axis=2)
    for ch in range(3):
        blended = (1.0 - opacity) * gray + opacity * float(tint[ch])
        out[..., ch] = np.where(mask, blended, gray)
    return np.rint(out).astype(np.uint8)


def write_ppm(rgb: np.ndarray) -> bytes:
    """Encode an RGB image as binary PPM (P6), dependency-free."""
    rgb = _as_rgb(rgb)
    header = b"P6\n%d %d\n255\n" % (rgb.shape[1], rgb.shape[0])
    return header + rgb.tobytes()


def write_png_rgb(rgb: np.ndarray) -> bytes:
    """Encode an RGB image as an 8-bit PNG."""
    rgb = _as_rgb(rgb)
    buf = io.BytesIO()
    Image.fromarray(rgb, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def _as_rgb(rgb: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(rgb, dtype=np.uint8))
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"RGB image must have shape (H, W, 3), got {arr.shape}")
    return arr
