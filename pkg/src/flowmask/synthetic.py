"""Synthetic clips with exactly known flow, flow masks, and detections.

Sprites translate by integer pixels per frame over a textured background,
so the generating flow field, the motion ground-truth masks, and the
per-object detector masks are all exact by construction. An artifact
schedule injects spurious detections on chosen frames, mimicking the
sporadic one-frame predictions the evaluation is meant to expose. A
moving background reproduces the known failure mode where nearly the
whole frame exceeds the motion threshold.

The textured (not flat) background matters when a clip feeds the
Horn-Schunck estimator, which cannot recover motion of untextured areas.
"""

import os
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .errors import SpriteOutOfBounds
from .flow_io import FlowField, save_flo
from .image_io import mask_to_image, write_pgm

_SPRITE_INTENSITIES = (235, 40, 200, 75, 160, 110)


@dataclass(frozen=True)
class Sprite:
    """A translating shape: rectangle (position = top-left corner, size =
    (w, h)) or disc (position = center, size = (radius, radius))."""

    shape: str  # "rectangle" or "disc"
    position: tuple[int, int]  # (x, y)
    size: tuple[int, int]
    velocity: tuple[int, int]  # (u, v) pixels/frame, integer steps
    intensity: int | None = None

    def __post_init__(self):
        if self.shape not in ("rectangle", "disc"):
            raise ValueError(f"sprite shape must be rectangle or disc, got {self.shape!r}")


@dataclass(frozen=True)
class SceneSpec:
    width: int
    height: int
    frame_count: int
    sprites: tuple[Sprite, ...] = ()
    background_velocity: tuple[int, int] = (0, 0)
    # (frame_index, (x, y, w, h)) rectangles of injected spurious detections
    artifact_schedule: tuple[tuple[int, tuple[int, int, int, int]], ...] = ()
    noise_amplitude: int = 30

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"bad frame size {self.width}x{self.height}")
        if self.frame_count < 2:
            raise ValueError(f"frame_count must be >= 2, got {self.frame_count}")
        if not 0 <= self.noise_amplitude <= 127:
            raise ValueError(f"noise_amplitude must be in 0..127, got {self.noise_amplitude}")
        for t, _region in self.artifact_schedule:
            if not 0 <= t < self.frame_count - 1:
                raise ValueError(f"artifact frame index {t} outside evaluated frames")


@dataclass(frozen=True)
class RenderedClip:
    frames: list[np.ndarray]  # frame_count grayscale frames
    true_flows: list[FlowField]  # frame_count - 1 fields
    true_masks: list[np.ndarray]  # frame_count - 1 motion masks
    detector_masks: list[list[np.ndarray]]  # per evaluated frame: per-object masks
    spec: SceneSpec = field(repr=False)


def render_clip(spec: SceneSpec, seed: int) -> RenderedClip:
    """Deterministically render a clip from its scene description."""
    w, h, n = spec.width, spec.height, spec.frame_count
    bu, bv = spec.background_velocity
    texture = _background_texture(spec, seed)

    footprints = [_sprite_footprints(spec, t) for t in range(n)]

    frames = []
    for t in range(n):
        frame = _background_window(texture, spec, t)
        for s, fp in zip(spec.sprites, footprints[t]):
            frame[fp] = _sprite_intensity(s, spec.sprites.index(s))
        frames.append(frame)

    true_flows = []
    true_masks = []
    detector_masks = []
    for t in range(n - 1):
        vec = np.empty((h, w, 2), dtype=np.float32)
        vec[..., 0] = bu
        vec[..., 1] = bv
        for s, fp in zip(spec.sprites, footprints[t]):
            vec[fp, 0] = s.velocity[0]
            vec[fp, 1] = s.velocity[1]
        true_flows.append(FlowField(vec))

        sprite_any = np.zeros((h, w), dtype=bool)
        for fp in footprints[t]:
            sprite_any |= fp
        moving = (vec[..., 0] != 0) | (vec[..., 1] != 0)
        true_masks.append(sprite_any & moving)

        per_object = [fp.copy() for fp in footprints[t]]
        for at, (ax, ay, aw, ah) in spec.artifact_schedule:
            if at == t:
                blob = np.zeros((h, w), dtype=bool)
                blob[max(ay, 0):ay + ah, max(ax, 0):ax + aw] = True
                per_object.append(blob)
        detector_masks.append(per_object)

    return RenderedClip(frames, true_flows, true_masks, detector_masks, spec)


def save_clip(out_dir, clip: RenderedClip) -> None:
    """Write a rendered clip to disk in the formats the CLI consumes.

    Layout: frames/frame_%06d.pgm, flows/frame_%06d.flo,
    true_masks/frame_%06d.pgm, detector_masks/frame_%06d/obj_%02d.pgm.
    """
    frames_dir = os.path.join(out_dir, "frames")
    flows_dir = os.path.join(out_dir, "flows")
    masks_dir = os.path.join(out_dir, "true_masks")
    det_dir = os.path.join(out_dir, "detector_masks")
    for d in (frames_dir, flows_dir, masks_dir, det_dir):
        os.makedirs(d, exist_ok=True)
    for t, frame in enumerate(clip.frames):
        with open(os.path.join(frames_dir, f"frame_{t:06d}.pgm"), "wb") as fh:
            fh.write(write_pgm(frame))
    for t, flow in enumerate(clip.true_flows):
        save_flo(os.path.join(flows_dir, f"frame_{t:06d}.flo"), flow)
    for t, mask in enumerate(clip.true_masks):
        with open(os.path.join(masks_dir, f"frame_{t:06d}.pgm"), "wb") as fh:
            fh.write(write_pgm(mask_to_image(mask)))
    for t, objects in enumerate(clip.detector_masks):
        frame_dir = os.path.join(det_dir, f"frame_{t:06d}")
        os.makedirs(frame_dir, exist_ok=True)
        for k, obj in enumerate(objects):
            with open(os.path.join(frame_dir, f"obj_{k:02d}.pgm"), "wb") as fh:
                fh.write(write_pgm(mask_to_image(obj)))


def _sprite_intensity(sprite: Sprite, index: int) -> int:
    if sprite.intensity is not None:
        return sprite.intensity
    return _SPRITE_INTENSITIES[index % len(_SPRITE_INTENSITIES)]


def _sprite_footprints(spec: SceneSpec, t: int) -> list[np.ndarray]:
    """Boolean footprint of each sprite at frame t; raises if out of frame."""
    h, w = spec.height, spec.width
    out = []
    for i, s in enumerate(spec.sprites):
        x = s.position[0] + t * s.velocity[0]
        y = s.position[1] + t * s.velocity[1]
        fp = np.zeros((h, w), dtype=bool)
        if s.shape == "rectangle":
            sw, sh = s.size
            if x < 0 or y < 0 or x + sw > w or y + sh > h:
                raise SpriteOutOfBounds(f"sprite {i} leaves the frame at frame {t}")
            fp[y:y + sh, x:x + sw] = True
        else:  # disc
            r = s.size[0]
            if x - r < 0 or y - r < 0 or x + r >= w or y + r >= h:
                raise SpriteOutOfBounds(f"sprite {i} leaves the frame at frame {t}")
            yy, xx = np.ogrid[:h, :w]
            fp = (xx - x) ** 2 + (yy - y) ** 2 <= r ** 2
        out.append(fp)
    return out


def _background_texture(spec: SceneSpec, seed: int) -> np.ndarray:
    """Oversized smooth texture that background windows slide over."""
    n = spec.frame_count
    bu, bv = spec.background_velocity
    tex_w = spec.width + abs(bu) * (n - 1)
    tex_h = spec.height + abs(bv) * (n - 1)
    rng = np.random.default_rng(seed)
    noise = ndimage.gaussian_filter(rng.standard_normal((tex_h, tex_w)), sigma=2.0, mode="wrap")
    peak = max(abs(noise).max(), 1e-12)
    tex = 128.0 + noise / peak * spec.noise_amplitude
    return np.clip(np.rint(tex), 0, 255).astype(np.uint8)


def _background_window(texture: np.ndarray, spec: SceneSpec, t: int) -> np.ndarray:
    """Window of the texture so content translates by +background_velocity."""
    n = spec.frame_count
    bu, bv = spec.background_velocity
    ox = max(0, (n - 1) * bu) - t * bu
    oy = max(0, (n - 1) * bv) - t * bv
    return texture[oy:oy + spec.height, ox:ox + spec.width].copy()
