"""Grayscale frame and binary-mask I/O.

Conventions used throughout the package:

* grayscale image: uint8 ndarray of shape (height, width)
* binary mask:     bool ndarray of shape (height, width), True = member

PGM (binary P5, maxval <= 255) is the canonical, dependency-free format;
8-bit grayscale PNG is supported for interoperability with detector
toolchains. RGB/RGBA PNGs are flattened to luminance as the integer
average (r + g + b) // 3, ignoring alpha; 16-bit and other exotic sample
formats are rejected.
"""

import io

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import (
    BadHeader,
    TruncatedPixels,
    UnsupportedMaxval,
    UnsupportedPngVariant,
)

DEFAULT_MASK_CUTOFF = 127

_WHITESPACE = b" \t\r\n\v\f"


def _pgm_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next header token at/after pos, skipping whitespace and # comments."""
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c in b"#":
            while pos < n and data[pos:pos + 1] != b"\n":
                pos += 1
        elif c in _WHITESPACE:
            pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise BadHeader("truncated PGM header")
    return data[start:pos], pos


def read_pgm(data: bytes) -> np.ndarray:
    """Decode a binary PGM (P5) file into a grayscale image."""
    if not data.startswith(b"P5"):
        raise BadHeader("not a binary PGM (P5) file")
    pos = 2
    fields = []
    for _ in range(3):
        tok, pos = _pgm_token(data, pos)
        if not tok.isdigit():
            raise BadHeader(f"non-numeric header field {tok!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise BadHeader(f"non-positive dimensions {width}x{height}")
    if not 1 <= maxval <= 255:
        raise UnsupportedMaxval(f"maxval {maxval} outside 1..255")
    # exactly one whitespace byte separates maxval from the raster
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
        raise BadHeader("missing whitespace before pixel raster")
    payload = data[pos + 1:]
    n = width * height
    if len(payload) < n:
        raise TruncatedPixels(f"need {n} pixel bytes, got {len(payload)}")
    return np.frombuffer(payload[:n], dtype=np.uint8).reshape(height, width).copy()


def write_pgm(image: np.ndarray) -> bytes:
    """Encode a grayscale image as binary PGM; read_pgm inverts it exactly."""
    image = _as_gray(image)
    header = b"P5\n%d %d\n255\n" % (image.shape[1], image.shape[0])
    return header + image.tobytes()


def read_png_gray(data: bytes) -> np.ndarray:
    """Decode a PNG to 8-bit grayscale, flattening RGB(A) by integer mean."""
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except UnidentifiedImageError as exc:
        raise BadHeader(f"undecodable image stream: {exc}") from exc
    if img.mode == "P":
        img = img.convert("RGB")
    if img.mode == "L":
        arr = np.asarray(img, dtype=np.uint8)
    elif img.mode in ("RGB", "RGBA", "LA"):
        rgb = np.asarray(img.convert("RGB"), dtype=np.uint16)
        arr = (rgb.sum(axis=2) // 3).astype(np.uint8)
    else:
        raise UnsupportedPngVariant(f"mode {img.mode!r} not supported (8-bit gray/RGB only)")
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise UnsupportedPngVariant(f"unexpected decoded shape {arr.shape}")
    return arr.copy()


def write_png_gray(image: np.ndarray) -> bytes:
    """Encode a grayscale image as an 8-bit grayscale PNG."""
    image = _as_gray(image)
    buf = io.BytesIO()
    Image.fromarray(image, mode="L").save(buf, format="PNG")
    return buf.getvalue()


def mask_from_image(image: np.ndarray, cutoff: int = DEFAULT_MASK_CUTOFF) -> np.ndarray:
    """Threshold an intensity image into a mask: member iff intensity > cutoff."""
    if not 0 <= cutoff <= 255:
        raise ValueError(f"cutoff {cutoff} outside 0..255")
    return _as_gray(image) > cutoff


def mask_to_image(mask: np.ndarray) -> np.ndarray:
    """Render a mask as 0/255 intensities (member -> 255)."""
    return np.asarray(mask, dtype=bool).astype(np.uint8) * 255


def _as_gray(image: np.ndarray) -> np.ndarray:
    arr = np.asarray(image)
    if arr.ndim != 2:
        raise ValueError(f"grayscale image must be 2-D, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        arr = arr.astype(np.uint8)
    return np.ascontiguousarray(arr)
