"""Exception hierarchy shared across the package.

Every error raised by flowmask derives from FlowmaskError so callers (and
the CLI) can catch the whole family at once. Class names double as the
machine-parsable error categories printed by the CLI.
"""


class FlowmaskError(Exception):
    """Base class for all flowmask errors."""


# --- .flo parsing ---

class MagicMismatch(FlowmaskError):
    """File does not start with the .flo sanity tag 202021.25."""


class TruncatedFile(FlowmaskError):
    """Byte count disagrees with the dimensions in the .flo header."""


class NonPositiveDimensions(FlowmaskError):
    """Width or height is zero or negative."""


class NonFiniteVector(FlowmaskError):
    """A flow vector contains NaN or infinity."""


class MagnitudeBoundExceeded(FlowmaskError):
    """A flow vector's magnitude is at or above the 1e9 visualization bound."""


# --- image parsing ---

class BadHeader(FlowmaskError):
    """Malformed PGM header or undecodable PNG stream."""


class TruncatedPixels(FlowmaskError):
    """Pixel payload shorter than the header promises."""


class UnsupportedMaxval(FlowmaskError):
    """PGM maxval outside 1..255."""


class UnsupportedPngVariant(FlowmaskError):
    """PNG sample format we do not flatten to 8-bit grayscale."""


# --- shape / sequence mismatches ---

class DimensionMismatch(FlowmaskError):
    """Two per-pixel inputs have different width or height."""


class LengthMismatch(FlowmaskError):
    """Paired sequences have different lengths."""


class EmptyClip(FlowmaskError):
    """A clip-level operation received no frames."""


class TooSmall(FlowmaskError):
    """Image too small for the requested flow estimation."""


# --- synthetic fixtures ---

class SpriteOutOfBounds(FlowmaskError):
    """A sprite leaves the frame at some point in the clip."""


# --- external tools ---

class FfmpegNotFound(FlowmaskError):
    """FFmpeg binary not found on PATH (or via FLOWMASK_FFMPEG)."""


class FfmpegFailed(FlowmaskError):
    """FFmpeg exited nonzero; message carries its diagnostic output."""
