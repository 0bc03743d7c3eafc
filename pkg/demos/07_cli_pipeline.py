"""Driving the whole pipeline through the CLI on an on-disk fixture clip.

Equivalent shell session:

    flowmask flow   frames/ flows/ --engine horn-schunck
    flowmask mask   flows/ flowmasks/ -t 1.0
    flowmask eval   flowmasks/ detector_masks/ -o report/ --viz
    flowmask sweep  flows/ detector_masks/ -T 0.5,1,2 -o sweep.csv

Run: python3 demos/07_cli_pipeline.py
"""

import tempfile
from pathlib import Path

from flowmask.cli import main
from flowmask.synthetic import SceneSpec, Sprite, render_clip, save_clip

spec = SceneSpec(
    width=64, height=48, frame_count=5, noise_amplitude=60,
    sprites=(Sprite("rectangle", (8, 10), (10, 10), (2, 0)),),
    artifact_schedule=((1, (44, 30, 5, 4)),),
)

with tempfile.TemporaryDirectory() as tmp:
    d = Path(tmp)
    save_clip(d, render_clip(spec, seed=99))
    print("== flow (Horn-Schunck) ==")
    main(["flow", str(d / "frames"), str(d / "hs_flows"),
          "--iterations", "120", "--levels", "2"])
    print("== mask ==")
    main(["mask", str(d / "hs_flows"), str(d / "flowmasks"), "-t", "1.0"])
    print("== eval ==")
    main(["eval", str(d / "flowmasks"), str(d / "detector_masks"),
          "-o", str(d / "report"), "--viz", "--flows-dir", str(d / "hs_flows")])
    print("== sweep ==")
    main(["sweep", str(d / "hs_flows"), str(d / "detector_masks"),
          "-T", "0.5,1,2", "-o", str(d / "sweep.csv")])
    print("\nreport.csv:")
    print((d / "report" / "report.csv").read_text())
    print("sweep.csv:")
    print((d / "sweep.csv").read_text())
