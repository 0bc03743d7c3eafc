"""Scoring detector masks against the motion ground truth.

The flow mask is the ground truth, the OR of all per-object detector
masks is the prediction. Per frame we count TP/FP/TN/FN pixels, compute
IOU = TP/(TP+FP+FN) and loss = 1 - IOU, and flag connected
false-positive regions as likely sporadic-artifact detections.

Run: python3 demos/03_evaluation_metrics.py
"""

from flowmask import (
    artifact_candidates,
    combine_masks,
    evaluate_clip,
    magnitude_method,
    write_report_csv,
)
from flowmask.synthetic import SceneSpec, Sprite, render_clip

# one real mover plus a spurious detection injected on frame 2 only
spec = SceneSpec(
    width=64, height=40, frame_count=5,
    sprites=(Sprite("rectangle", (8, 12), (10, 10), (2, 0)),),
    artifact_schedule=((2, (44, 24, 5, 4)),),
)
clip = render_clip(spec, seed=7)

flow_masks = [magnitude_method(f, 1.0) for f in clip.true_flows]
seg_masks = [combine_masks(objs, shape=(40, 64)) for objs in clip.detector_masks]

report = evaluate_clip("demo_clip", flow_masks, seg_masks)
print(write_report_csv(report).decode())

for i, (seg, flow) in enumerate(zip(seg_masks, flow_masks)):
    for region in artifact_candidates(seg, flow, min_area=2):
        x0, y0, x1, y1 = region.bounding_box
        print(f"frame {i}: artifact candidate, area {region.area}, "
              f"box ({x0},{y0})-({x1},{y1}), centroid {region.centroid}")
