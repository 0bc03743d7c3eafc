"""Middlebury .flo reader/writer and the validated in-memory flow field.

Layout of a .flo file, bit-exact:

    bytes 0..3    little-endian float32 202021.25 (the "PIEH" sanity tag)
    bytes 4..7    little-endian int32 width
    bytes 8..11   little-endian int32 height
    then          height rows x width columns of interleaved little-endian
                  float32 (u, v), row-major, top row first

Total size is therefore 12 + 8 * width * height bytes.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    MagicMismatch,
    MagnitudeBoundExceeded,
    NonFiniteVector,
    NonPositiveDimensions,
    TruncatedFile,
)

FLO_MAGIC = np.float32(202021.25)
FLO_HEADER_BYTES = 12

# Per-pixel magnitude must stay below this for the colorization scale to work.
MAGNITUDE_BOUND = 1e9


@dataclass(frozen=True)
class FlowField:
    """Dense per-pixel motion vectors for one frame pair.

    ``vectors`` has shape (height, width, 2), dtype float32; channel 0 is u
    (horizontal displacement in pixels/frame), channel 1 is v (vertical).
    The array is copied and frozen at construction, so instances are
    immutable and safe to share across threads.
    """

    vectors: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.vectors, dtype=np.float32)
        if vec.ndim != 3 or vec.shape[2] != 2:
            raise ValueError(f"vectors must have shape (H, W, 2), got {vec.shape}")
        if vec.shape[0] < 1 or vec.shape[1] < 1:
            raise NonPositiveDimensions(f"flow field dimensions {vec.shape[1]}x{vec.shape[0]}")
        if not np.isfinite(vec).all():
            raise NonFiniteVector("flow field contains NaN or infinite components")
        mag = np.hypot(vec[..., 0].astype(np.float64), vec[..., 1].astype(np.float64))
        if (mag >= MAGNITUDE_BOUND).any():
            raise MagnitudeBoundExceeded(
                f"max magnitude {mag.max():g} >= bound {MAGNITUDE_BOUND:g}"
            )
        vec = vec.copy()
        vec.flags.writeable = False
        object.__setattr__(self, "vectors", vec)

    @property
    def height(self) -> int:
        return self.vectors.shape[0]

    @property
    def width(self) -> int:
        return self.vectors.shape[1]

    @property
    def u(self) -> np.ndarray:
        return self.vectors[..., 0]

    @property
    def v(self) -> np.ndarray:
        return self.vectors[..., 1]


def parse_flo(data: bytes, sanitize_nonfinite: bool = False) -> FlowField:
    """Decode a complete .flo file image into a validated FlowField.

    With ``sanitize_nonfinite`` set, NaN/inf vectors (emitted by some flow
    tools for occluded pixels) are replaced by (0, 0) before validation;
    by default they are rejected.
    """
    if len(data) < FLO_HEADER_BYTES:
        raise TruncatedFile(f"file is {len(data)} bytes, header alone needs {FLO_HEADER_BYTES}")
    magic = np.frombuffer(data, dtype="<f4", count=1)[0]
    if not (magic == FLO_MAGIC):
        raise MagicMismatch(f"first float is {float(magic)!r}, expected {float(FLO_MAGIC)}")
    width, height = (int(x) for x in np.frombuffer(data, dtype="<i4", count=2, offset=4))
    if width <= 0 or height <= 0:
        raise NonPositiveDimensions(f"header claims {width}x{height}")
    expected = FLO_HEADER_BYTES + 8 * width * height
    if len(data) != expected:
        raise TruncatedFile(f"file is {len(data)} bytes, {width}x{height} needs {expected}")
    vec = np.frombuffer(data, dtype="<f4", offset=FLO_HEADER_BYTES).reshape(height, width, 2)
    if sanitize_nonfinite:
        vec = vec.copy()
        vec[~np.isfinite(vec).all(axis=-1)] = 0.0
    return FlowField(vec)


def write_flo(field: FlowField) -> bytes:
    """Serialize a FlowField to the exact .flo layout parse_flo reads."""
    header = FLO_MAGIC.tobytes()
    header += np.array([field.width, field.height], dtype="<i4").tobytes()
    return header + np.ascontiguousarray(field.vectors, dtype="<f4").tobytes()


def load_flo(path, sanitize_nonfinite: bool = False) -> FlowField:
    with open(path, "rb") as fh:
        return parse_flo(fh.read(), sanitize_nonfinite=sanitize_nonfinite)


def save_flo(path, field: FlowField) -> None:
    with open(path, "wb") as fh:
        fh.write(write_flo(field))
