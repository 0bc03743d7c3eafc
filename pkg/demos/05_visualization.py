"""Rendering flow fields and confusion maps to PNG.

Flow uses the standard color wheel: hue = direction, saturation =
magnitude normalized by the frame maximum, so stationary pixels come out
pure white. Confusion maps use a fixed palette: TP green, FP red,
FN yellow, TN black.

Run: python3 demos/05_visualization.py   (writes demos/output/*.png)
"""

import os

from flowmask import combine_masks, confusion, magnitude_method, overlay_mask
from flowmask.synthetic import SceneSpec, Sprite, render_clip
from flowmask.visualization import colorize_confusion, colorize_flow, write_png_rgb

out_dir = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(out_dir, exist_ok=True)

spec = SceneSpec(
    width=96, height=64, frame_count=3,
    sprites=(
        Sprite("rectangle", (10, 14), (14, 12), (3, 0)),
        Sprite("disc", (70, 40), (8, 8), (0, -2)),
    ),
    artifact_schedule=((0, (50, 8, 8, 6)),),
)
clip = render_clip(spec, seed=123)

flow = clip.true_flows[0]
with open(os.path.join(out_dir, "flow.png"), "wb") as fh:
    fh.write(write_png_rgb(colorize_flow(flow)))

flow_mask = magnitude_method(flow, 1.0)
seg = combine_masks(clip.detector_masks[0], shape=(64, 96))
_, labels = confusion(flow_mask, seg)
with open(os.path.join(out_dir, "confusion.png"), "wb") as fh:
    fh.write(write_png_rgb(colorize_confusion(labels)))

with open(os.path.join(out_dir, "overlay.png"), "wb") as fh:
    fh.write(write_png_rgb(overlay_mask(clip.frames[0], flow_mask, (220, 30, 30), 0.45)))

print(f"wrote flow.png, confusion.png, overlay.png to {out_dir}")
print("flow.png: moving shapes colored by direction, white stationary background")
print("confusion.png: green TP, red FP (the injected artifact), black TN")
