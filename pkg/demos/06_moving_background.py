"""The known failure mode: a background moving relative to the camera.

When the background itself moves faster than the threshold, nearly every
pixel lands in the flow mask and it stops discriminating moving objects.
The magnitude method is only a valid ground-truth source when the
background is stationary relative to the camera.

Run: python3 demos/06_moving_background.py
"""

from flowmask import combine_masks, evaluate_clip, magnitude_method
from flowmask.synthetic import SceneSpec, Sprite, render_clip

sprites = (Sprite("rectangle", (12, 10), (10, 10), (2, 0)),)

for name, background in (("stationary", (0, 0)), ("moving", (2, 0))):
    spec = SceneSpec(width=64, height=48, frame_count=8,
                     sprites=sprites, background_velocity=background)
    clip = render_clip(spec, seed=5)
    flow_masks = [magnitude_method(f, 1.0) for f in clip.true_flows]
    segs = [combine_masks(objs, shape=(48, 64)) for objs in clip.detector_masks]
    report = evaluate_clip(name, flow_masks, segs)
    coverage = flow_masks[0].mean()
    print(f"{name:10s} background: flow mask covers {coverage:6.1%} of the frame, "
          f"average loss {report.average_loss:.4f}")
